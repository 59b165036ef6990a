"""Erros do motor. Todos serializam no formato {'erro': ..., 'tipo': ...}."""


class EngineError(Exception):
    """Base de todos os erros reportados pelo motor."""

    def __init__(self, mensagem, **detalhes):
        super().__init__(mensagem)
        self.detalhes = detalhes

    def to_dict(self):
        dados = {'erro': str(self), 'tipo': type(self).__name__}
        for chave, valor in self.detalhes.items():
            if isinstance(valor, (str, int, bool, list, tuple)) or valor is None:
                dados[chave] = list(valor) if isinstance(valor, tuple) else valor
        return dados


# --- ÁLGEBRA LINEAR ---
class DimensionMismatch(EngineError):
    pass


class DivisionByZero(EngineError):
    pass


class FieldMismatch(EngineError):
    pass


class ReduciblePolynomial(EngineError):
    pass


# --- ÁLGEBRAS E MÓDULOS ---
class NotFiniteDimensional(EngineError):
    pass


class MalformedRelation(EngineError):
    pass


class RelationViolated(EngineError):
    pass


class AlgebraMismatch(EngineError):
    pass


class NotASubmodule(EngineError):
    pass


# --- PERÍODOS ---
class BudgetExceeded(EngineError):
    """Orçamento esgotado; `parcial` guarda o resultado parcial, quando houver."""

    def __init__(self, mensagem, parcial=None, **detalhes):
        super().__init__(mensagem, **detalhes)
        self.parcial = parcial


class NotMono(EngineError):
    pass


class NotEpi(EngineError):
    pass


class WellDefinednessFailure(EngineError):
    pass


class HypothesisFailed(EngineError):
    pass


class WitnessInvalid(EngineError):
    pass


class NotAUnit(EngineError):
    pass


class EmbeddingMissing(EngineError):
    pass


class NotARelation(EngineError):
    pass


class InternalInconsistency(EngineError):
    pass


# --- YOGA ---
class NotExact(EngineError):
    pass


class SupportViolation(EngineError):
    pass


class OrthogonalityFailure(EngineError):
    pass


# --- 1-MOTIVOS ---
class RangeError(EngineError):
    pass


class ModelMismatch(EngineError):
    pass


# --- ENTRADA ---
class ParseError(EngineError):
    pass


class ValidationError(EngineError):
    pass
