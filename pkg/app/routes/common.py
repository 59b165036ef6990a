"""
Peças comuns dos comandos: RunConfig, opções --format/--emit-schema, saída
em texto ou JSON e códigos de saída (0 sucesso, 1 erro, 2 veredicto Unknown).
"""
import logging
import os
from dataclasses import dataclass, field
from functools import wraps

import click
from flask import current_app, json

from app.errors import EngineError, ValidationError
from app.schemas import INPUT_SCHEMAS, REPORT_SCHEMAS

logger = logging.getLogger(__name__)

SAIDA_OK = 0
SAIDA_ERRO = 1
SAIDA_DESCONHECIDO = 2

FORMATOS = ('text', 'json')

# nome do orçamento -> chave em Config
ORCAMENTOS = {
    'box_bound': 'SPIN_BOX_BOUND',
    'm_budget': 'REALIZATION_M_BUDGET',
    'frontier_cap': 'CLASS_C_FRONTIER_CAP',
}


@dataclass(frozen=True)
class RunConfig:
    command: str
    inputs: dict = field(default_factory=dict)  # papel -> caminho
    box_bound: int = None
    m_budget: int = None
    frontier_cap: int = None
    output_format: str = 'text'

    @classmethod
    def from_options(cls, command, output_format=None, inputs=None, **orcamentos):
        """Opções de linha sobre os padrões de current_app.config; valida caminhos e orçamentos."""
        config = current_app.config
        valores = {}
        for nome, chave in ORCAMENTOS.items():
            valor = orcamentos.get(nome)
            if valor is None:
                valor = config.get(chave) or None
            elif valor < 1:
                raise ValidationError(f"Orçamento {nome} precisa ser positivo", orcamento=nome, valor=valor)
            valores[nome] = valor
        formato = output_format or config.get('OUTPUT_FORMAT', 'text')
        if formato not in FORMATOS:
            raise ValidationError(f"Formato desconhecido: {formato}")
        inputs = {papel: caminho for papel, caminho in (inputs or {}).items() if caminho}
        for papel, caminho in inputs.items():
            if not os.path.exists(caminho):
                raise ValidationError(f"Arquivo não encontrado: {caminho}", arquivo=caminho, papel=papel)
        return cls(command, inputs, output_format=formato, **valores)


@dataclass
class Report:
    """Resultado de um comando: dicionário estável, linhas de texto e status."""
    data: dict
    lines: list
    status: str = 'ok'  # ok | unknown

    @property
    def exit_code(self):
        return SAIDA_DESCONHECIDO if self.status == 'unknown' else SAIDA_OK


def dumps(dados):
    return json.dumps(dados, sort_keys=True, indent=2)


def _emitir_esquema(comando, entradas):
    def callback(ctx, _param, valor):
        if not valor or ctx.resilient_parsing:
            return
        esquema = {
            'report': REPORT_SCHEMAS[comando],
            'error': REPORT_SCHEMAS['error'],
            'inputs': {nome: INPUT_SCHEMAS[nome] for nome in entradas},
        }
        click.echo(dumps(esquema))
        ctx.exit(SAIDA_OK)
    return callback


def engine_command(comando, entradas=()):
    """
    Acrescenta --format e --emit-schema ao comando e converte o retorno
    (Report) ou um EngineError em saída e código de saída.
    """
    def decorador(funcao):
        @click.option('--format', 'output_format', type=click.Choice(FORMATOS), default=None,
                      help='text (padrão) ou json')
        @click.option('--emit-schema', is_flag=True, is_eager=True, expose_value=False,
                      callback=_emitir_esquema(comando, entradas), help='Imprime os esquemas JSON e sai')
        @wraps(funcao)
        def executar(output_format=None, **kwargs):
            formato = output_format or current_app.config.get('OUTPUT_FORMAT', 'text')
            try:
                relatorio = funcao(output_format=formato, **kwargs)
            except EngineError as e:
                logger.info("%s falhou: %s", comando, e)
                emitir_erro(e, formato)
                click.get_current_context().exit(SAIDA_ERRO)
            emitir(relatorio, formato)
            click.get_current_context().exit(relatorio.exit_code)
        return executar
    return decorador


def emitir(relatorio, formato):
    if formato == 'json':
        click.echo(dumps(relatorio.data))
    else:
        for linha in relatorio.lines:
            click.echo(linha)


def emitir_erro(erro, formato):
    dados = erro.to_dict()
    parcial = getattr(erro, 'parcial', None)
    if parcial is not None:
        dados['parcial'] = parcial.to_dict()
    if formato == 'json':
        click.echo(dumps(dados))
    else:
        click.echo(f"Erro ({dados['tipo']}): {dados['erro']}", err=True)
