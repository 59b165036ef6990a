"""
Leitura dos arquivos de entrada: JSON com erro de parse apontando arquivo e
linha, validação por jsonschema e construção dos objetos do motor.
"""
import json
import logging
import os

from jsonschema import Draft7Validator
from jsonschema.exceptions import best_match

from app.errors import ParseError, ValidationError
from app.schemas import INPUT_SCHEMAS
from app.services.evaluation import ComparisonPoint
from app.services.exactlin import RatMatrix, Subspace, rat, rat_to_str
from app.services.numberfield import FieldEmbedding, NumberField
from app.services.onemotive import SaturatedInput
from app.services.quivalg import SubmoduleHandle, build_algebra, validate_module
from app.services.yoga import WeightPartition, sequence_from_submodule

logger = logging.getLogger(__name__)


def ler_json(caminho):
    if not os.path.exists(caminho):
        raise ValidationError(f"Arquivo não encontrado: {caminho}", arquivo=caminho)
    with open(caminho, 'rb') as arquivo:
        bruto = arquivo.read()
    try:
        texto = bruto.decode('utf-8')
    except UnicodeDecodeError as e:
        linha = bruto.count(b'\n', 0, e.start) + 1
        coluna = e.start - bruto.rfind(b'\n', 0, e.start)
        raise ParseError(f"{caminho}:{linha}: arquivo não está em UTF-8", arquivo=caminho, linha=linha, coluna=coluna)
    try:
        return json.loads(texto)
    except json.JSONDecodeError as e:
        raise ParseError(f"{caminho}:{e.lineno}: {e.msg}", arquivo=caminho, linha=e.lineno, coluna=e.colno)


def validar(dados, tipo, origem='<entrada>'):
    """Valida contra INPUT_SCHEMAS[tipo]; o erro mais relevante vira ValidationError com o caminho do campo."""
    validador = Draft7Validator(INPUT_SCHEMAS[tipo])
    erro = best_match(validador.iter_errors(dados))
    if erro is not None:
        campo = '/'.join(str(p) for p in erro.absolute_path) or '<raiz>'
        raise ValidationError(f"{origem}: campo {campo}: {erro.message}", arquivo=origem, campo=campo)
    return dados


def _matriz(linhas, cols):
    return RatMatrix.from_rows([[rat(x) for x in linha] for linha in linhas], cols)


# --- CONSTRUTORES ---

def algebra_from_dict(dados):
    flechas = [(a['name'], str(a['from']), str(a['to'])) for a in dados['arrows']]
    relacoes = [[(rat(t.get('coeff', 1)), tuple(t['path'])) for t in rel] for rel in dados.get('relations', [])]
    return build_algebra([str(v) for v in dados['vertices']], flechas, relacoes)


def module_from_dict(dados, alg=None):
    alg = alg or algebra_from_dict(dados['algebra'])
    return validate_module(alg, dict(dados['dims']), dict(dados.get('maps', {})))


def submodule_from_vectors(M, vetores):
    """Subespaço gerado pelos vetores; precisa ser estável (NotASubmodule caso contrário)."""
    return SubmoduleHandle(M, Subspace.span(M.dim, [[rat(x) for x in v] for v in vetores]))


def relation_from_dict(dados, n):
    T = _matriz(dados['tensor'], n)
    if (T.rows, T.cols) != (n, n):
        raise ValidationError(f"A relação precisa ser uma matriz {n}x{n}")
    return T


def comparison_from_dict(dados, alg):
    corpo = NumberField(tuple(dados['field'])) if 'field' in dados else NumberField.rationals()
    if 'embedding_of_K' in dados:
        imagem = corpo.element(dados['embedding_of_K'])
        mergulho = FieldEmbedding(NumberField.rationals(), corpo, imagem)
    else:
        mergulho = FieldEmbedding.rational(corpo)
    return ComparisonPoint.from_mapping(alg, mergulho, dados['u'])


# --- ARQUIVOS ---

def load_module(caminho):
    dados = validar(ler_json(caminho), 'module', caminho)
    M = module_from_dict(dados)
    logger.debug("Módulo carregado de %s: dims %s", caminho, M.vertex_dims)
    return M


def load_weights(caminho):
    return WeightPartition.from_dict(validar(ler_json(caminho), 'weights', caminho))


def load_relation(caminho, M):
    return relation_from_dict(validar(ler_json(caminho), 'relation', caminho), M.dim)


def load_comparison(caminho, M):
    return comparison_from_dict(validar(ler_json(caminho), 'comparison', caminho), M.algebra)


def load_sequence(caminho):
    """{"module", "sub": vetores de M_0 ⊆ M, "classes": [classe de baixo, classe de cima]}."""
    dados = validar(ler_json(caminho), 'sequence', caminho)
    M = module_from_dict(dados['module'])
    U = submodule_from_vectors(M, dados['sub'])
    baixo, cima = ([str(v) for v in classe] for classe in dados['classes'])
    return sequence_from_submodule(U, baixo, cima)


def load_onemotive(caminho):
    return SaturatedInput.from_dict(validar(ler_json(caminho), 'onemotive', caminho))


# --- DOCUMENTOS ---

def module_to_dict(M):
    """Documento de módulo que load_module lê de volta."""
    return {'algebra': M.algebra.to_json(), **M.to_json()}


def sequence_to_dict(U, sub_class, quotient_class):
    return {
        'module': module_to_dict(U.ambient),
        'sub': [[rat_to_str(x) for x in v] for v in U.space.vectors()],
        'classes': [sorted(sub_class), sorted(quotient_class)],
    }
