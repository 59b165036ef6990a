import click
from flask import Blueprint

from app.errors import ValidationError
from app.routes.common import Report, RunConfig, engine_command
from app.services.audit import percorrer
from app.services.exactlin import Subspace, rat, solve
from app.services.loaders import ler_json, load_module, load_sequence, load_weights, validar
from app.services.quivalg import SubmoduleHandle, image_under, power, spin
from app.services.yoga import (LEFT, RIGHT, certify_principal, class_c_explore, replay, saturated_check,
                               universal_extension, universal_lift)

bp_yoga = Blueprint('yoga', __name__, cli_group=None)


def _arvore(no, nivel=0):
    linhas = [f"{'  ' * nivel}- {no.rule} dims {list(no.subject.vertex_dims)}"]
    for filho in no.children:
        linhas += _arvore(filho, nivel + 1)
    return linhas


def _carregar_alvo(caminho):
    return validar(ler_json(caminho), 'target', caminho)


@bp_yoga.cli.command('certify')
@engine_command('certify', ('module', 'weights'))
@click.argument('module_path')
@click.option('--weights', 'weights_path', required=True, help='Arquivo com a partição dos vértices por peso')
@click.option('--replay/--no-replay', 'refazer', default=True, help='Reexecuta as verificações da derivação')
def certify(module_path, weights_path, refazer, output_format):
    """Certifica (ou refuta) a principalidade de M pela partição de pesos."""
    cfg = RunConfig.from_options('certify', output_format, {'module': module_path, 'weights': weights_path})
    M = load_module(cfg.inputs['module'])
    veredito = certify_principal(M, load_weights(cfg.inputs['weights']))
    if refazer:
        replay(veredito)
    linhas = [veredito.status]
    if veredito.gap:
        linhas.append(f"dim E(M) = {veredito.gap[0]} > dim P(M) = {veredito.gap[1]}")
    if veredito.derivation is not None:
        if veredito.module != M:
            linhas.append(f"vale para o módulo de dims {list(veredito.module.vertex_dims)}")
        linhas += _arvore(veredito.derivation)
        linhas.append(f"nós: {sum(1 for _ in percorrer(veredito.derivation))}")
    linhas += [f"nota: {nota}" for nota in veredito.notes]
    status = 'unknown' if veredito.status == 'Unknown' else 'ok'
    return Report(veredito.to_dict(), linhas, status)


@bp_yoga.cli.command('lift')
@engine_command('lift', ('sequence', 'target'))
@click.argument('sequence_path')
@click.option('--target', 'target_path', required=True,
              help='Vetores de M: imagens em M_1 (kind=lift) ou vetores de M_0 (kind=extension)')
def lift(sequence_path, target_path, output_format):
    """Levantamento universal de N_1' ⊆ M_1 ou extensão universal de N_0' ⊆ M_0."""
    cfg = RunConfig.from_options('lift', output_format, {'sequence': sequence_path, 'target': target_path})
    seq = load_sequence(cfg.inputs['sequence'])
    alvo = _carregar_alvo(cfg.inputs['target'])
    tipo = alvo.get('kind', 'lift')
    vetores = [[rat(x) for x in v] for v in alvo['vectors']]
    if any(len(v) != seq.middle.dim for v in vetores):
        raise ValidationError(f"Os vetores do alvo precisam ter dimensão {seq.middle.dim}")
    if tipo == 'lift':
        imagens = image_under(seq.projection, spin(seq.middle, vetores))
        resultado = universal_lift(seq, imagens)
    else:
        coords = [solve(seq.inclusion.matrix, v) for v in vetores]
        if any(c is None for c in coords):
            raise ValidationError("Vetor do alvo fora de M_0")
        resultado = universal_extension(seq, spin(seq.sub, coords))
    saturacao = {lado: saturated_check(seq, lado).to_dict() for lado in (LEFT, RIGHT)}
    dados = {
        'sequence': seq.to_dict(),
        'kind': tipo,
        'result': resultado.to_json(),
        'result_dims': list(resultado.vertex_dims),
        'saturation': saturacao,
    }
    linhas = [
        f"{'levantamento' if tipo == 'lift' else 'extensão'} universal: dims {list(resultado.vertex_dims)}"
        + (" (= M)" if resultado.dim == seq.middle.dim else ""),
    ]
    linhas += [f"saturação {lado}: {v['status']}" for lado, v in saturacao.items()]
    return Report(dados, linhas)


@bp_yoga.cli.command('explore')
@engine_command('explore', ('module', 'target'))
@click.argument('module_path')
@click.option('--target', 'target_path', required=True, help='Submódulo alvo de M^n: power n e tuplos de vetores')
@click.option('--side', type=click.Choice((LEFT, RIGHT)), default=LEFT)
@click.option('--frontier-cap', type=int, default=None, help='Limite de estados visitados')
def explore(module_path, target_path, side, frontier_cap, output_format):
    """Busca limitada de uma construção do alvo na classe C."""
    cfg = RunConfig.from_options('explore', output_format, {'module': module_path, 'target': target_path},
                                 frontier_cap=frontier_cap)
    M = load_module(cfg.inputs['module'])
    alvo = _carregar_alvo(cfg.inputs['target'])
    n = alvo.get('power', 1)
    potencia = power(M, n)
    vetores = []
    for v in alvo['vectors']:
        if len(v) != n * M.dim:
            raise ValidationError(f"Cada vetor do alvo precisa ter {n} blocos de dimensão {M.dim}")
        vetores.append(potencia.combine([[rat(x) for x in v[i * M.dim:(i + 1) * M.dim]] for i in range(n)]))
    sub = SubmoduleHandle(potencia.module, Subspace.span(potencia.module.dim, vetores))
    rastro = class_c_explore(M, sub, side=side, frontier_cap=cfg.frontier_cap)
    linhas = [f"{rastro.status} após {rastro.visited} estados (M^{rastro.power})"]
    linhas += [f"  {passo}" for passo in rastro.steps]
    return Report(rastro.to_dict(), linhas, 'unknown' if rastro.status == 'Unknown' else 'ok')
