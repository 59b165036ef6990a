import click
from flask import Blueprint

from app.routes.common import Report, RunConfig, engine_command
from app.services.evaluation import eval_and_conjecture
from app.services.exactlin import rat_to_str
from app.services.loaders import load_comparison, load_module, load_relation
from app.services.periods import CERTIFIED, STRATEGIES, depth_space, endo_quotient, period_space
from app.services.realization import realize_relation

bp_periods = Blueprint('periods', __name__, cli_group=None)


def _linhas_espaco(espaco, titulo):
    linhas = [f"{titulo} = {espaco.dim}"]
    if espaco.depth is not None:
        linhas[0] += f" (k = {espaco.depth})"
    linhas.append(f"dim H_B(M) ⊗ H_dR(M)^∨ = {espaco.ambient_dim}; relações: {espaco.relations.dim}")
    if not espaco.certified:
        linhas.append("cota superior não certificada" + ("" if espaco.complete else " (busca truncada)"))
    linhas.append("base: " + ", ".join(f"σ{r}⊗ω{c}" for r, c in espaco.basis_positions()))
    for i, vetor in enumerate(espaco.relations.vectors()):
        termos = [f"{rat_to_str(x)}·σ{j // espaco.size}⊗ω{j % espaco.size}" for j, x in enumerate(vetor) if x]
        linhas.append(f"  r{i}: " + " + ".join(termos))
    return linhas


# --- COMANDOS DE PERÍODOS ---

@bp_periods.cli.command('period')
@engine_command('period', ('module',))
@click.argument('module_path')
def period(module_path, output_format):
    """Espaço de períodos P(M) pelo oráculo de coeficientes."""
    cfg = RunConfig.from_options('period', output_format, {'module': module_path})
    espaco = period_space(load_module(cfg.inputs['module']))
    return Report(espaco.to_dict(), _linhas_espaco(espaco, 'dim P(M)'))


@bp_periods.cli.command('depth')
@engine_command('depth', ('module',))
@click.argument('module_path')
@click.option('--k', 'k', type=int, required=True, help='Profundidade (potências M^m com m ≤ k)')
@click.option('--strategy', type=click.Choice(STRATEGIES), default=CERTIFIED)
@click.option('--box-bound', type=int, default=None, help='Caixa de coeficientes da estratégia spin-box')
def depth(module_path, k, strategy, box_bound, output_format):
    """Cota superior P^k(M) a partir de sequências com termo do meio M^m."""
    cfg = RunConfig.from_options('depth', output_format, {'module': module_path}, box_bound=box_bound)
    espaco = depth_space(load_module(cfg.inputs['module']), k, strategy, box_bound=cfg.box_bound)
    return Report(espaco.to_dict(), _linhas_espaco(espaco, 'dim P^k(M)'))


@bp_periods.cli.command('endo')
@engine_command('endo', ('module',))
@click.argument('module_path')
def endo(module_path, output_format):
    """E(M) = End(H_B(M)) / [End(M), End(H_B(M))]."""
    cfg = RunConfig.from_options('endo', output_format, {'module': module_path})
    espaco = endo_quotient(load_module(cfg.inputs['module']))
    return Report(espaco.to_dict(), _linhas_espaco(espaco, 'dim E(M)'))


@bp_periods.cli.command('realize')
@engine_command('realize', ('module', 'relation'))
@click.argument('module_path')
@click.option('--relation', 'relation_path', required=True, help='Arquivo com o tensor da relação')
@click.option('--m-budget', type=int, default=None, help='Maior m aceito para M^m')
def realize(module_path, relation_path, m_budget, output_format):
    """Realiza uma relação do oráculo como sequência exata 0 → N' → M^m → N → 0."""
    cfg = RunConfig.from_options('realize', output_format, {'module': module_path, 'relation': relation_path},
                                 m_budget=m_budget)
    M = load_module(cfg.inputs['module'])
    realizada = realize_relation(M, load_relation(cfg.inputs['relation'], M), m_budget=cfg.m_budget)
    linhas = [
        f"m = {realizada.m}",
        f"dim N' = {realizada.submodule.dim}; dims de N = {list(realizada.quotient.module.vertex_dims)}",
    ]
    for i, (s, w) in enumerate(zip(realizada.sigma, realizada.omega)):
        linhas.append(f"  σ{i} = {[rat_to_str(x) for x in s]}  ω{i} = {[rat_to_str(x) for x in w]}")
    return Report(realizada.to_dict(), linhas)


@bp_periods.cli.command('eval')
@engine_command('eval', ('module', 'comparison'))
@click.argument('module_path')
@click.option('--comparison', 'comparison_path', required=True, help='Arquivo com o ponto de comparação u')
def evaluate_periods(module_path, comparison_path, output_format):
    """Avalia P(M) num ponto de comparação e procura falhas de injetividade."""
    cfg = RunConfig.from_options('eval', output_format, {'module': module_path, 'comparison': comparison_path})
    M = load_module(cfg.inputs['module'])
    relatorio = eval_and_conjecture(M, load_comparison(cfg.inputs['comparison'], M))
    linhas = [
        f"dim P(M) = {relatorio.space.dim}",
        f"núcleo no espaço ambiente: {relatorio.ambient_kernel_dim}",
        f"núcleo em P(M): {len(relatorio.conjecture_kernel)}"
        + (" (avaliação injetiva)" if relatorio.injective else ""),
        f"relações realizadas: {len(relatorio.realizations)}",
    ]
    return Report(relatorio.to_dict(), linhas)
