"""
Trilha de auditoria das certificações: cada regra aplicada vira um nó da
árvore de derivação, com as testemunhas serializáveis e o contexto necessário
para o replay.
"""
import logging

from app.models import DerivationNode

logger = logging.getLogger(__name__)


def _dims_da_sequencia(seq):
    return {
        'sub': list(seq.sub.vertex_dims),
        'middle': list(seq.middle.vertex_dims),
        'quotient': list(seq.quotient.vertex_dims),
        'sub_class': sorted(seq.sub_class),
        'quotient_class': sorted(seq.quotient_class),
    }


def registrar_semisimples(modulo):
    """Folha: módulo semissimples (todas as flechas agem por zero)."""
    logger.debug("Semisimple: dims %s", modulo.vertex_dims)
    return DerivationNode('Semisimple', modulo, {'arrows_zero': True})


def registrar_saturacao(regra, modulo, seq, veredito, filhos, lado, somando=None, forma='augmented'):
    """
    Nó SatPrincipal / SatPrincipalVar: a sequência admissível saturada, os
    certificados dos extremos e o somando usado para voltar a M.
    `forma` é 'augmented' (vale para M ⊕ somando), 'add' (mesmo add) ou 'generator'.
    """
    testemunhas = {
        'side': lado,
        'sequence': _dims_da_sequencia(seq),
        'saturation': dict(veredito.checks),
        'form': forma,
    }
    if somando is not None:
        testemunhas['summand_dims'] = list(somando.vertex_dims)
    logger.info("%s (%s, %s): dims %s", regra, lado, forma, modulo.vertex_dims)
    return DerivationNode(regra, modulo, testemunhas, list(filhos),
                          {'sequence': seq, 'side': lado, 'summand': somando, 'form': forma})


def registrar_soma(modulo, seq_m, seq_n, veredito, lado):
    """Nó SumLemma: a soma de duas sequências saturadas continua saturada."""
    testemunhas = {
        'side': lado,
        'first': _dims_da_sequencia(seq_m),
        'second': _dims_da_sequencia(seq_n),
        'checks': dict(veredito.checks),
    }
    return DerivationNode('SumLemma', modulo, testemunhas, [],
                          {'sequences': (seq_m, seq_n), 'side': lado})


def registrar_lacuna(modulo, dim_e, dim_p):
    """Nó DimGap: dim E(M) > dim P(M) refuta a principalidade."""
    logger.info("DimGap: dim E = %s > dim P = %s", dim_e, dim_p)
    return DerivationNode('DimGap', modulo, {'dim_E': dim_e, 'dim_P': dim_p})


def percorrer(no):
    """Nós da árvore em pré-ordem."""
    yield no
    for filho in no.children:
        yield from percorrer(filho)


def regras_usadas(no):
    return sorted({n.rule for n in percorrer(no)}) if no else []
