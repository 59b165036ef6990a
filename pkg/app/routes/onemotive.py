import click
from flask import Blueprint

from app.errors import ValidationError
from app.routes.common import Report, RunConfig, engine_command
from app.services.loaders import load_onemotive
from app.services.onemotive import (SaturatedInput, baker_dims, baker_model, gaussian_algebra, matrix_input,
                                    sqrt2_algebra, synthesize_model)

bp_onemotive = Blueprint('onemotive', __name__, cli_group=None)

EXEMPLOS = {
    'gaussian': lambda: SaturatedInput.regular(gaussian_algebra()),
    'sqrt2': lambda: SaturatedInput.regular(sqrt2_algebra()),
    'matrix': matrix_input,
}


def _graduacao(titulo, dims):
    return f"{titulo}: gr⁰ = {dims.d0}, gr⁻¹ = {dims.dm1}, gr⁻² = {dims.dm2} (total {dims.total})"


@bp_onemotive.cli.command('onemotive')
@engine_command('onemotive', ('onemotive',))
@click.option('--g', 'g', type=int, default=None, help='Dimensão de A (B = Q)')
@click.option('--l', 'l', type=int, default=None, help='Posto de L (B = Q)')
@click.option('--m', 'm', type=int, default=None, help='Posto de T (B = Q)')
@click.option('--input', 'input_path', default=None, help='Arquivo com B e as ações em H(A), H(T), H(L)')
@click.option('--example', type=click.Choice(sorted(EXEMPLOS)), default=None, help='Entrada de exemplo')
def onemotive(g, l, m, input_path, example, output_format):
    """Dimensões graduadas de P para um 1-motivo saturado, conferidas no modelo matricial."""
    cfg = RunConfig.from_options('onemotive', output_format, {'input': input_path})
    contagens = (g, l, m)
    escolhas = sum([any(c is not None for c in contagens), input_path is not None, example is not None])
    if escolhas != 1:
        raise ValidationError("Use exatamente uma forma de entrada: --g/--l/--m, --input ou --example")
    if input_path:
        entrada = load_onemotive(cfg.inputs['input'])
    elif example:
        entrada = EXEMPLOS[example]()
    else:
        if any(c is None for c in contagens):
            raise ValidationError("--g, --l e --m precisam ser informados juntos")
        entrada = SaturatedInput.from_counts(g, l, m)
    relatorio = synthesize_model(entrada)
    linhas = [
        _graduacao('fórmula', relatorio.formula),
        _graduacao('modelo', relatorio.model),
        f"dim H = {relatorio.space_dim}; dim End(M') = {relatorio.end_dim}",
    ]
    return Report(relatorio.to_dict(), linhas)


@bp_onemotive.cli.command('baker')
@engine_command('baker')
@click.option('--x', 'x', type=int, required=True, help='dim X')
@click.option('--l', 'l', type=int, required=True, help='dim L')
@click.option('--n', 'n', type=int, required=True, help='dim N ⊆ X ⊗ L^∨')
@click.option('--model/--no-model', 'modelo', default=False, help='Confere a fórmula no módulo de quiver')
def baker(x, l, n, modelo, output_format):
    """dim P para o 1-motivo de Baker: 2 + dim X · dim L − dim N."""
    RunConfig.from_options('baker', output_format)
    if modelo:
        _, dados = baker_model(x, l, n)
    else:
        dados = {'formula': baker_dims(x, l, n), 'model': None, 'matches': None}
    linhas = [str(dados['formula'])]
    if modelo:
        linhas.append(f"modelo de quiver: dim P = {dados['model']}")
    return Report(dados, linhas)
