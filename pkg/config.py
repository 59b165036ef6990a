import os
from dotenv import load_dotenv

load_dotenv()


def _inteiro(nome, padrao):
    valor = os.environ.get(nome)
    return int(valor) if valor else padrao


class Config:
    # Álgebras de caminhos: limites da enumeração da base
    PATH_LENGTH_BOUND = _inteiro('PATH_LENGTH_BOUND', 12)
    PATH_BASIS_BOUND = _inteiro('PATH_BASIS_BOUND', 400)

    # Espaços de profundidade k
    SPIN_BOX_BOUND = _inteiro('SPIN_BOX_BOUND', 1)
    SPIN_CANDIDATE_CAP = _inteiro('SPIN_CANDIDATE_CAP', 200)
    HOM_CLOSURE_CAP = _inteiro('HOM_CLOSURE_CAP', 200)

    # Realização de relações (0 = usar dim H_B(M))
    REALIZATION_M_BUDGET = _inteiro('REALIZATION_M_BUDGET', 0)

    # Exploração da classe C
    CLASS_C_FRONTIER_CAP = _inteiro('CLASS_C_FRONTIER_CAP', 400)
    CLASS_C_MAX_POWER = _inteiro('CLASS_C_MAX_POWER', 2)

    # Busca limitada de levantamentos alternativos
    LIFT_SEARCH_BOUND = _inteiro('LIFT_SEARCH_BOUND', 1)
    LIFT_SEARCH_CAP = _inteiro('LIFT_SEARCH_CAP', 60)

    OUTPUT_FORMAT = os.environ.get('OUTPUT_FORMAT') or 'text'
    LOG_LEVEL = os.environ.get('LOG_LEVEL') or 'WARNING'
