import json

import pytest
from jsonschema import Draft7Validator

from app.schemas import REPORT_SCHEMAS
from config import _inteiro


def executar(runner, *args):
    return runner.invoke(args=[str(a) for a in args])


def relatorio_json(resultado, comando):
    dados = json.loads(resultado.output)
    Draft7Validator(REPORT_SCHEMAS[comando]).validate(dados)
    return dados


# --- PERÍODOS ---

def test_period_texto(runner, fixture_path):
    resultado = executar(runner, 'period', fixture_path('a2_P1.json'))
    assert resultado.exit_code == 0
    linhas = resultado.output.splitlines()
    assert linhas[0] == 'dim P(M) = 3'
    assert 'relações: 1' in linhas[1]


def test_period_json(runner, fixture_path):
    resultado = executar(runner, 'period', fixture_path('a2_P1.json'), '--format', 'json')
    assert resultado.exit_code == 0
    dados = relatorio_json(resultado, 'period')
    assert dados['dim'] == 3
    assert dados['provenance'] == 'CoefficientOracle'
    assert dados['relations'] == [[['0', '0'], ['1', '0']]]


def test_saida_json_pela_configuracao(app, runner, fixture_path):
    app.config['OUTPUT_FORMAT'] = 'json'
    resultado = executar(runner, 'endo', fixture_path('a2_P1.json'))
    assert relatorio_json(resultado, 'endo')['dim'] == 4


def test_depth(runner, fixture_path):
    resultado = executar(runner, 'depth', fixture_path('a2_P1_S2.json'), '--k', 2, '--format', 'json')
    assert resultado.exit_code == 0
    dados = relatorio_json(resultado, 'depth')
    assert (dados['dim'], dados['depth'], dados['certified']) == (3, 2, True)


def test_depth_com_orcamento_invalido(runner, fixture_path):
    resultado = executar(runner, 'depth', fixture_path('a2_P1.json'), '--k', 1, '--box-bound', 0, '--format', 'json')
    assert resultado.exit_code == 1
    assert relatorio_json(resultado, 'error')['tipo'] == 'ValidationError'


def test_realize(runner, fixture_path):
    resultado = executar(runner, 'realize', fixture_path('a2_P1.json'),
                         '--relation', fixture_path('a2_P1_relation.json'), '--format', 'json')
    assert resultado.exit_code == 0
    dados = relatorio_json(resultado, 'realize')
    assert dados['m'] == 1
    assert dados['quotient_dims'] == [1, 0]
    assert dados['target'] == [['0', '0'], ['1', '0']]


@pytest.mark.parametrize('comparacao, injetiva', [
    ('a2_unit_comparison.json', False),
    ('a2_cubic_comparison.json', True),
])
def test_eval(runner, fixture_path, comparacao, injetiva):
    resultado = executar(runner, 'eval', fixture_path('a2_P1.json'),
                         '--comparison', fixture_path(comparacao), '--format', 'json')
    assert resultado.exit_code == 0
    dados = relatorio_json(resultado, 'eval')
    assert dados['injective'] is injetiva
    assert dados['dim_P'] == 3


# --- CERTIFICAÇÃO, LEVANTAMENTOS, EXPLORAÇÃO ---

def test_certify_refutado_sai_com_zero(runner, fixture_path):
    resultado = executar(runner, 'certify', fixture_path('a2_P1.json'), '--weights', fixture_path('a2_weights.json'))
    assert resultado.exit_code == 0
    linhas = resultado.output.splitlines()
    assert linhas[0] == 'Refuted'
    assert linhas[1] == 'dim E(M) = 4 > dim P(M) = 3'


def test_certify_json(runner, fixture_path):
    resultado = executar(runner, 'certify', fixture_path('a2_P1_S2.json'),
                         '--weights', fixture_path('a2_weights.json'), '--format', 'json')
    assert resultado.exit_code == 0
    dados = relatorio_json(resultado, 'certify')
    assert dados['status'] == 'Certified'
    assert dados['module_dims'] == [1, 2]
    assert dados['derivation']['rule'] == 'SatPrincipal'
    assert dados['gap'] is None


def test_certify_semissimples_sem_replay(runner, fixture_path):
    resultado = executar(runner, 'certify', fixture_path('a2_S1_S2.json'),
                         '--weights', fixture_path('a2_weights.json'), '--no-replay')
    assert resultado.exit_code == 0
    assert resultado.output.splitlines()[:2] == ['Certified', '- Semisimple dims [1, 1]']


def test_lift(runner, fixture_path):
    resultado = executar(runner, 'lift', fixture_path('a2_P1_socle_seq.json'),
                         '--target', fixture_path('a2_P1_lift_target.json'), '--format', 'json')
    assert resultado.exit_code == 0
    dados = relatorio_json(resultado, 'lift')
    assert dados['result_dims'] == [1, 1]
    assert dados['saturation']['left']['status'] == 'Certified'
    assert dados['sequence']['sub_dims'] == [0, 1]


def test_extensao(runner, fixture_path, tmp_path):
    alvo = tmp_path / 'extensao.json'
    alvo.write_text(json.dumps({'kind': 'extension', 'vectors': [['0', '1']]}))
    resultado = executar(runner, 'lift', fixture_path('a2_P1_socle_seq.json'), '--target', alvo)
    assert resultado.exit_code == 0
    assert resultado.output.splitlines()[0] == 'extensão universal: dims [1, 1] (= M)'

    fora = tmp_path / 'fora.json'
    fora.write_text(json.dumps({'kind': 'extension', 'vectors': [['1', '0']]}))
    resultado = executar(runner, 'lift', fixture_path('a2_P1_socle_seq.json'), '--target', fora)
    assert resultado.exit_code == 1
    assert 'Erro (ValidationError)' in resultado.output


def test_explore_atinge_a_diagonal(runner, fixture_path):
    resultado = executar(runner, 'explore', fixture_path('a2_P1_S2.json'),
                         '--target', fixture_path('a2_P1_S2_diagonal_target.json'), '--format', 'json')
    assert resultado.exit_code == 0
    dados = relatorio_json(resultado, 'explore')
    assert dados['status'] == 'Reached'
    assert dados['power'] == 2


def test_explore_desconhecido_sai_com_dois(runner, fixture_path):
    resultado = executar(runner, 'explore', fixture_path('a2_P1.json'),
                         '--target', fixture_path('a2_P1_socle_target.json'))
    assert resultado.exit_code == 2
    assert resultado.output.startswith('Unknown')


# --- 1-MOTIVOS ---

def test_onemotive_por_contagens(runner):
    resultado = executar(runner, 'onemotive', '--g', 1, '--l', 1, '--m', 1, '--format', 'json')
    assert resultado.exit_code == 0
    dados = relatorio_json(resultado, 'onemotive')
    assert dados['formula'] == {'gr0': 6, 'gr-1': 4, 'gr-2': 1, 'total': 11}
    assert dados['matches'] is True


@pytest.mark.parametrize('exemplo, graduacao', [('gaussian', (4, 4, 2)), ('matrix', (3, 2, 1))])
def test_onemotive_exemplos(runner, exemplo, graduacao):
    dados = relatorio_json(executar(runner, 'onemotive', '--example', exemplo, '--format', 'json'), 'onemotive')
    assert (dados['model']['gr0'], dados['model']['gr-1'], dados['model']['gr-2']) == graduacao


def test_onemotive_por_arquivo(runner, fixture_path):
    resultado = executar(runner, 'onemotive', '--input', fixture_path('gaussian_onemotive.json'))
    assert resultado.exit_code == 0
    assert resultado.output.splitlines()[0] == 'fórmula: gr⁰ = 4, gr⁻¹ = 4, gr⁻² = 2 (total 10)'


@pytest.mark.parametrize('args', [
    [],
    ['--g', 1],
    ['--g', 1, '--l', 1, '--m', 1, '--example', 'gaussian'],
])
def test_onemotive_exige_uma_entrada(runner, args):
    resultado = executar(runner, 'onemotive', *args, '--format', 'json')
    assert resultado.exit_code == 1
    assert relatorio_json(resultado, 'error')['tipo'] == 'ValidationError'


def test_baker(runner):
    resultado = executar(runner, 'baker', '--x', 1, '--l', 2, '--n', 0)
    assert resultado.exit_code == 0
    assert resultado.output.splitlines() == ['4']
    dados = relatorio_json(executar(runner, 'baker', '--x', 1, '--l', 2, '--n', 0, '--model', '--format', 'json'),
                           'baker')
    assert dados == {'formula': 4, 'model': 4, 'matches': True}


def test_baker_fora_do_intervalo(runner):
    resultado = executar(runner, 'baker', '--x', 1, '--l', 2, '--n', 5, '--format', 'json')
    assert resultado.exit_code == 1
    dados = relatorio_json(resultado, 'error')
    assert dados['tipo'] == 'RangeError'
    assert dados['n'] == 5


# --- ERROS E ESQUEMAS ---

def test_json_malformado(runner, fixture_path):
    resultado = executar(runner, 'period', fixture_path('malformed.json'), '--format', 'json')
    assert resultado.exit_code == 1
    dados = relatorio_json(resultado, 'error')
    assert dados['tipo'] == 'ParseError'
    assert dados['linha'] >= 3


def test_modulo_invalido(runner, fixture_path):
    resultado = executar(runner, 'period', fixture_path('bad_module.json'), '--format', 'json')
    assert resultado.exit_code == 1
    dados = relatorio_json(resultado, 'error')
    assert dados['tipo'] == 'ValidationError'
    assert dados['campo'] == 'dims/1'


def test_arquivo_inexistente_em_texto(runner, tmp_path):
    resultado = executar(runner, 'period', tmp_path / 'nada.json')
    assert resultado.exit_code == 1
    assert 'Erro (ValidationError)' in resultado.output


def test_emit_schema_dispensa_argumentos(runner):
    resultado = executar(runner, 'realize', '--emit-schema')
    assert resultado.exit_code == 0
    esquema = json.loads(resultado.output)
    assert set(esquema) == {'report', 'error', 'inputs'}
    assert set(esquema['inputs']) == {'module', 'relation'}
    Draft7Validator.check_schema(esquema['report'])


def test_saida_deterministica(runner, fixture_path):
    args = ('certify', fixture_path('a2_P1.json'), '--weights', fixture_path('a2_weights.json'), '--format', 'json')
    assert executar(runner, *args).output == executar(runner, *args).output


def test_formato_desconhecido_e_erro_de_uso(runner, fixture_path):
    resultado = executar(runner, 'period', fixture_path('a2_P1.json'), '--format', 'xml')
    assert resultado.exit_code == 2


def test_inteiro_do_ambiente(monkeypatch):
    monkeypatch.setenv('LIMITE_DE_TESTE', '7')
    assert _inteiro('LIMITE_DE_TESTE', 3) == 7
    monkeypatch.delenv('LIMITE_DE_TESTE')
    assert _inteiro('LIMITE_DE_TESTE', 3) == 3


def test_racional_com_denominador_zero_no_alvo(runner, fixture_path, tmp_path):
    alvo = tmp_path / 'alvo.json'
    alvo.write_text(json.dumps({'kind': 'lift', 'vectors': [['1/0', '0']]}))
    resultado = executar(runner, 'lift', fixture_path('a2_P1_socle_seq.json'), '--target', alvo, '--format', 'json')
    assert resultado.exit_code == 1
    dados = relatorio_json(resultado, 'error')
    assert dados['tipo'] == 'ValidationError'
    assert '1/0' in dados['erro']


def test_racional_com_denominador_zero_no_ponto(runner, fixture_path, tmp_path):
    ponto = tmp_path / 'ponto.json'
    ponto.write_text(json.dumps({'field': [-2, 0, 0, 1], 'u': {'e_1': ['1/0']}}))
    resultado = executar(runner, 'eval', fixture_path('a2_P1.json'), '--comparison', ponto)
    assert resultado.exit_code == 1
    assert 'Erro (ValidationError)' in resultado.output


def test_arquivo_fora_de_utf8(runner, tmp_path):
    binario = tmp_path / 'binario.json'
    binario.write_bytes(b'{\n  "x": "\xff\xfe"}')
    resultado = executar(runner, 'period', binario, '--format', 'json')
    assert resultado.exit_code == 1
    dados = relatorio_json(resultado, 'error')
    assert dados['tipo'] == 'ParseError'
    assert (dados['linha'], dados['coluna']) == (2, 9)
