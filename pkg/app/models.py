"""
Registros de resultado do motor. Cada um sabe se serializar com to_dict();
os relatórios da linha de comando são montados a partir desses dicionários.
"""
from dataclasses import dataclass, field

from app.services.exactlin import ONE, ZERO, RatMatrix, rat_to_str


def _matriz(m):
    return m.to_json() if m is not None else None


def _vetor(v):
    return [rat_to_str(x) for x in v]


def elementary_tensor(n, r, c):
    """Tensor σ_r ⊗ ω_c como matriz n × n."""
    entradas = [[ZERO] * n for _ in range(n)]
    entradas[r][c] = ONE
    return RatMatrix.from_rows(entradas, n)


def tensor_from_vector(n, vetor):
    return RatMatrix(n, n, tuple(tuple(vetor[r * n:(r + 1) * n]) for r in range(n)))


@dataclass(frozen=True)
class PeriodSpace:
    module: object
    ambient_dim: int
    relations: object  # Subspace de H_B ⊗ H_dR^∨, tensores achatados por linha
    quotient: object  # QuotientPresentation
    provenance: str  # CoefficientOracle | DepthK | EndoQuotient
    depth: int = None
    certified: bool = True
    complete: bool = True

    @property
    def dim(self):
        return self.quotient.dim

    @property
    def size(self):
        """dim H_B(M)."""
        return self.module.dim

    def basis_positions(self):
        n = self.size
        return [(j // n, j % n) for j in self.quotient.complement]

    def basis_tensor(self, i):
        r, c = self.basis_positions()[i]
        return elementary_tensor(self.size, r, c)

    def coordinates(self, tensor):
        return self.quotient.project(tensor.flatten())

    def is_relation(self, tensor):
        return self.relations.contains(tensor.flatten())

    def to_dict(self):
        n = self.size
        return {
            'provenance': self.provenance,
            'depth': self.depth,
            'dim': self.dim,
            'ambient_dim': self.ambient_dim,
            'certified': self.certified,
            'complete': self.complete,
            'basis': [[r, c] for r, c in self.basis_positions()],
            'relations': [tensor_from_vector(n, v).to_json() for v in self.relations.vectors()],
        }


@dataclass(frozen=True)
class GluedPeriods:
    """P(M) ⊕ P(N) colados ao longo das relações de um morfismo."""
    glued_dim: int
    direct_sum_dim: int
    oracle_dims: tuple

    @property
    def matches_direct_sum(self):
        return self.glued_dim == self.direct_sum_dim

    def to_dict(self):
        return {
            'glued_dim': self.glued_dim,
            'direct_sum_dim': self.direct_sum_dim,
            'oracle_dims': list(self.oracle_dims),
            'matches_direct_sum': self.matches_direct_sum,
        }


@dataclass(frozen=True)
class RealizedRelation:
    module: object
    m: int
    power: object  # DirectSum M^m
    submodule: object  # SubmoduleHandle N' ⊆ M^m
    quotient: object  # Quotient N = M^m / N'
    sigma: tuple
    omega: tuple
    target: RatMatrix

    def to_dict(self):
        return {
            'm': self.m,
            'submodule_dim': self.submodule.dim,
            'quotient_dims': list(self.quotient.module.vertex_dims),
            'submodule': self.submodule.to_json(),
            'sigma': [_vetor(s) for s in self.sigma],
            'omega': [_vetor(w) for w in self.omega],
            'target': _matriz(self.target),
        }


@dataclass(frozen=True)
class SpanMap:
    """Mapa induzido P(origem) → P(destino) ao longo de um mono ou epi."""
    kind: str  # mono | epi
    source: PeriodSpace
    target: PeriodSpace
    matrix: RatMatrix
    tensor_map: object = field(repr=False, compare=False)

    def apply(self, tensor):
        return self.tensor_map(tensor)

    def to_dict(self):
        return {
            'kind': self.kind,
            'source_dim': self.source.dim,
            'target_dim': self.target.dim,
            'matrix': _matriz(self.matrix),
            'rank': self.matrix.rank(),
        }


@dataclass(frozen=True)
class IdentityReport:
    mode: str
    dims: dict
    holds: bool
    maps: tuple = ()

    def to_dict(self):
        return {
            'mode': self.mode,
            'dims': dict(self.dims),
            'holds': self.holds,
            'maps': [m.to_dict() for m in self.maps],
        }


@dataclass(frozen=True)
class PushoutReport:
    module: object  # M̃
    dim_original: int
    dim_reduced: int
    x_dim: int

    @property
    def holds(self):
        return self.dim_original == self.dim_reduced

    def to_dict(self):
        return {
            'x_dim': self.x_dim,
            'reduced_dims': list(self.module.vertex_dims),
            'dim_P_original': self.dim_original,
            'dim_P_reduced': self.dim_reduced,
            'holds': self.holds,
        }


@dataclass(frozen=True)
class EvalReport:
    space: PeriodSpace
    values: tuple  # valores em L dos elementos da base de P(M)
    ambient_kernel_dim: int
    conjecture_kernel: tuple  # tuplas sobre K: falhas da injetividade em P(M)
    realizations: tuple

    @property
    def injective(self):
        return not self.conjecture_kernel

    def to_dict(self):
        return {
            'dim_P': self.space.dim,
            'values': [v.to_json() for v in self.values],
            'ambient_kernel_dim': self.ambient_kernel_dim,
            'relation_dim': self.space.relations.dim,
            'conjecture_kernel': [[k.to_json() for k in tupla] for tupla in self.conjecture_kernel],
            'injective': self.injective,
            'realizations': [r.to_dict() for r in self.realizations],
        }


@dataclass
class DerivationNode:
    """Nó da árvore de derivação; `context` guarda os objetos usados no replay."""
    rule: str
    subject: object  # FdModule
    witnesses: dict = field(default_factory=dict)
    children: list = field(default_factory=list)
    context: dict = field(default_factory=dict, repr=False)

    def to_dict(self):
        return {
            'rule': self.rule,
            'subject_dims': list(self.subject.vertex_dims),
            'witnesses': dict(self.witnesses),
            'children': [c.to_dict() for c in self.children],
        }


@dataclass(frozen=True)
class PrincipalityVerdict:
    status: str  # Certified | Refuted | Unknown
    module: object  # módulo para o qual o veredicto vale (M ou M ⊕ M_0)
    derivation: DerivationNode = None
    gap: tuple = None  # (dim E, dim P) na refutação
    notes: tuple = ()

    def to_dict(self):
        return {
            'status': self.status,
            'module_dims': list(self.module.vertex_dims),
            'derivation': self.derivation.to_dict() if self.derivation else None,
            'gap': {'dim_E': self.gap[0], 'dim_P': self.gap[1]} if self.gap else None,
            'notes': list(self.notes),
        }


@dataclass(frozen=True)
class SaturationVerdict:
    side: str
    status: str  # Certified | Unknown
    checks: dict

    @property
    def certified(self):
        return self.status == 'Certified'

    def to_dict(self):
        return {'side': self.side, 'status': self.status, 'checks': dict(self.checks)}


@dataclass(frozen=True)
class ExplorationTrace:
    status: str  # Reached | Unknown
    steps: tuple  # descrições dos passos até o alvo
    visited: int
    power: int

    def to_dict(self):
        return {'status': self.status, 'steps': list(self.steps), 'visited': self.visited, 'power': self.power}


@dataclass(frozen=True)
class GradedDims:
    d0: int
    dm1: int
    dm2: int

    @property
    def total(self):
        return self.d0 + self.dm1 + self.dm2

    def as_tuple(self):
        return (self.d0, self.dm1, self.dm2)

    def to_dict(self):
        return {'gr0': self.d0, 'gr-1': self.dm1, 'gr-2': self.dm2, 'total': self.total}


@dataclass(frozen=True)
class ModelReport:
    formula: GradedDims
    model: GradedDims
    space_dim: int  # dim H
    end_dim: int  # dim End(M')

    @property
    def matches(self):
        return self.formula == self.model

    def to_dict(self):
        return {
            'formula': self.formula.to_dict(),
            'model': self.model.to_dict(),
            'H_dim': self.space_dim,
            'End_dim': self.end_dim,
            'matches': self.matches,
        }
