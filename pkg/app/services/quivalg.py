"""
Álgebras de caminhos com relações e suas representações de dimensão finita.

Convenções:
- um caminho é percorrido na ordem das flechas listadas; a ação de ["x", "y"]
  é M_y · M_x (composição da esquerda para a direita ao longo do caminho);
- o produto na álgebra segue módulos à esquerda: p * q = "percorre q, depois p";
- H_B(M) é a concatenação dos espaços dos vértices na ordem declarada.
"""
import logging
from dataclasses import dataclass
from functools import cached_property

from app.errors import (AlgebraMismatch, InternalInconsistency, MalformedRelation, NotASubmodule,
                        NotFiniteDimensional, RelationViolated, ValidationError)
from app.services.algebra import StructureAlgebra
from app.services.exactlin import (ONE, ZERO, RatMatrix, Subspace, block_diagonal, kernel, kron,
                                   quotient_presentation, rat, rat_to_str, solve, sum_all)
from config import Config

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Arrow:
    name: str
    source: str
    target: str


@dataclass(frozen=True)
class Path:
    source: str
    target: str
    arrows: tuple = ()

    @property
    def length(self):
        return len(self.arrows)

    @property
    def name(self):
        if not self.arrows:
            return f"e_{self.source}"
        return '*'.join(reversed(self.arrows))

    def then(self, outro):
        """Concatenação: percorre self, depois outro (None se não compõem)."""
        if self.target != outro.source:
            return None
        return Path(self.source, outro.target, self.arrows + outro.arrows)


# --- ÁLGEBRA DE CAMINHOS ---

class BoundQuiverAlgebra:
    """kQ/I com I admissível; base de caminhos e constantes de estrutura."""

    def __init__(self, vertices, arrows, relations, path_basis, mult_table, reducao):
        self.vertices = tuple(vertices)
        self.arrows = tuple(arrows)
        self.relations = tuple(relations)
        self.path_basis = tuple(path_basis)
        self.mult_table = tuple(mult_table)
        self._caminhos, self._indice, self._ideal, self._comprimento = reducao

    @property
    def dim(self):
        return len(self.path_basis)

    @cached_property
    def arrow_index(self):
        return {a.name: i for i, a in enumerate(self.arrows)}

    @cached_property
    def vertex_index(self):
        return {v: i for i, v in enumerate(self.vertices)}

    @cached_property
    def basis_index(self):
        return {p: i for i, p in enumerate(self.path_basis)}

    def arrow(self, nome):
        return self.arrows[self.arrow_index[nome]]

    def reduce(self, combinacao):
        """Coordenadas na base de caminhos de uma combinação {Path: coeficiente}."""
        vetor = [ZERO] * len(self._caminhos)
        for caminho, c in combinacao.items():
            if caminho.length >= self._comprimento and caminho not in self._indice:
                continue  # caminhos longos estão no ideal
            vetor[self._indice[caminho]] += c
        for p, linha in zip(self._ideal.pivots, self._ideal.basis.entries):
            if vetor[p]:
                c = vetor[p]
                vetor = [a - c * b for a, b in zip(vetor, linha)]
        return tuple(vetor[self._indice[p]] for p in self.path_basis)

    def path_product(self, p, q):
        """Coordenadas de p * q (percorre q, depois p)."""
        caminho = q.then(p)
        if caminho is None:
            return tuple(ZERO for _ in self.path_basis)
        return self.reduce({caminho: ONE})

    def multiply(self, x, y):
        return self.structure.multiply(x, y)

    @cached_property
    def unit(self):
        return tuple(ONE if p.length == 0 else ZERO for p in self.path_basis)

    @cached_property
    def structure(self):
        """A mesma álgebra como StructureAlgebra, nomes de caminhos como rótulos."""
        return StructureAlgebra(tuple(p.name for p in self.path_basis), self.mult_table)

    @cached_property
    def opposite(self):
        """Álgebra oposta: flechas invertidas, relações com caminhos revertidos."""
        flechas = [Arrow(a.name, a.target, a.source) for a in self.arrows]
        relacoes = [[(c, tuple(reversed(caminho))) for c, caminho in rel] for rel in self.relations]
        return build_algebra(self.vertices, flechas, relacoes)

    def to_json(self):
        return {
            'vertices': list(self.vertices),
            'arrows': [{'name': a.name, 'from': a.source, 'to': a.target} for a in self.arrows],
            'relations': [[{'path': list(caminho), 'coeff': rat_to_str(c)} for c, caminho in rel]
                          for rel in self.relations],
        }


def _normalizar_relacoes(vertices, flechas, relacoes):
    por_nome = {a.name: a for a in flechas}
    normalizadas = []
    for indice, relacao in enumerate(relacoes):
        termos = {}
        extremos = set()
        for coef, caminho in relacao:
            caminho = tuple(caminho)
            if any(nome not in por_nome for nome in caminho):
                raise MalformedRelation(f"Relação {indice} usa flecha desconhecida", relacao=indice)
            if len(caminho) < 2:
                raise MalformedRelation(f"Relação {indice} tem termo fora do quadrado do ideal das flechas",
                                        relacao=indice)
            for a, b in zip(caminho, caminho[1:]):
                if por_nome[a].target != por_nome[b].source:
                    raise MalformedRelation(f"Relação {indice}: caminho {list(caminho)} não é contíguo",
                                            relacao=indice)
            extremos.add((por_nome[caminho[0]].source, por_nome[caminho[-1]].target))
            termos[caminho] = termos.get(caminho, ZERO) + rat(coef)
        if len(extremos) > 1:
            raise MalformedRelation(f"Relação {indice} combina caminhos não paralelos", relacao=indice)
        termos = tuple((c, caminho) for caminho, c in sorted(termos.items()) if c)
        if termos:
            normalizadas.append(termos)
    return normalizadas


def _caminhos_ate(vertices, flechas, comprimento, limite):
    niveis = [[Path(v, v) for v in vertices]]
    total = len(vertices)
    for _ in range(comprimento):
        proximo = []
        for p in niveis[-1]:
            for a in flechas:
                if a.source == p.target:
                    proximo.append(Path(p.source, a.target, p.arrows + (a.name,)))
        total += len(proximo)
        if total > limite:
            raise NotFiniteDimensional(f"Enumeração de caminhos excedeu o limite de {limite}")
        niveis.append(proximo)
    return niveis


def build_algebra(vertices, arrows, relations=(), length_bound=None, basis_bound=None):
    """
    Constrói kQ/I. Para L = 1, 2, ... calcula a imagem de I em kQ/J^{L+1};
    para quando todos os caminhos de comprimento L caem no ideal.
    """
    length_bound = length_bound or Config.PATH_LENGTH_BOUND
    basis_bound = basis_bound or Config.PATH_BASIS_BOUND
    vertices = tuple(str(v) for v in vertices)
    if len(set(vertices)) != len(vertices):
        raise ValidationError("Vértices repetidos")
    flechas = []
    for a in arrows:
        if not isinstance(a, Arrow):
            a = Arrow(*a)
        if a.source not in vertices or a.target not in vertices:
            raise ValidationError(f"Flecha {a.name} liga vértices desconhecidos")
        flechas.append(a)
    if len({a.name for a in flechas}) != len(flechas):
        raise ValidationError("Nomes de flechas repetidos")
    relacoes = _normalizar_relacoes(vertices, flechas, relations)
    por_nome = {a.name: a for a in flechas}

    for comprimento in range(1, length_bound + 1):
        niveis = _caminhos_ate(vertices, flechas, comprimento, basis_bound)
        caminhos = [p for nivel in reversed(niveis) for p in nivel]  # longos primeiro
        indice = {p: i for i, p in enumerate(caminhos)}
        geradores = []
        for relacao in relacoes:
            origem = por_nome[relacao[0][1][0]].source
            destino = por_nome[relacao[0][1][-1]].target
            minimo = min(len(caminho) for _, caminho in relacao)
            folga = comprimento - minimo
            if folga < 0:
                continue
            prefixos = [p for nivel in niveis[:folga + 1] for p in nivel if p.target == origem]
            for u in prefixos:
                sufixos = [p for nivel in niveis[:folga - u.length + 1] for p in nivel if p.source == destino]
                for w in sufixos:
                    vetor = [ZERO] * len(caminhos)
                    for c, caminho in relacao:
                        total = Path(u.source, w.target, u.arrows + caminho + w.arrows)
                        if total.length <= comprimento:
                            vetor[indice[total]] += c
                    if any(vetor):
                        geradores.append(vetor)
        ideal = Subspace.span(len(caminhos), geradores)
        topo = niveis[comprimento]
        if all(ideal.contains(_unitario(len(caminhos), indice[p])) for p in topo):
            pivos = set(ideal.pivots)
            base = [p for p in caminhos if indice[p] not in pivos]
            base.sort(key=lambda p: (p.length, vertices.index(p.source), vertices.index(p.target), p.arrows))
            reducao = (caminhos, indice, ideal, comprimento)
            alg = BoundQuiverAlgebra(vertices, flechas, relacoes, base, (), reducao)
            alg.mult_table = tuple(tuple(alg.path_product(p, q) for q in base) for p in base)
            _verificar_associatividade(alg)
            logger.debug("Álgebra com %s vértices e dimensão %s", len(vertices), len(base))
            return alg
    raise NotFiniteDimensional(f"Caminhos de comprimento {length_bound} ainda fora do ideal")


def _unitario(n, i):
    return tuple(ONE if k == i else ZERO for k in range(n))


def _verificar_associatividade(alg):
    base = alg.path_basis
    for i, p in enumerate(base):
        for j, q in enumerate(base):
            pq = alg.mult_table[i][j]
            for k, r in enumerate(base):
                esquerda = [ZERO] * len(base)
                for t, c in enumerate(pq):
                    if c:
                        for s, d in enumerate(alg.mult_table[t][k]):
                            if d:
                                esquerda[s] += c * d
                direita = [ZERO] * len(base)
                for t, c in enumerate(alg.mult_table[j][k]):
                    if c:
                        for s, d in enumerate(alg.mult_table[i][t]):
                            if d:
                                direita[s] += c * d
                if esquerda != direita:
                    raise InternalInconsistency(f"Tabela não associativa em ({p.name}, {q.name}, {r.name})")


# --- MÓDULOS ---

@dataclass(frozen=True, eq=False)
class FdModule:
    algebra: BoundQuiverAlgebra
    vertex_dims: tuple  # alinhado com algebra.vertices
    arrow_maps: tuple  # alinhado com algebra.arrows

    def __eq__(self, outro):
        return (isinstance(outro, FdModule) and self.algebra is outro.algebra
                and self.vertex_dims == outro.vertex_dims and self.arrow_maps == outro.arrow_maps)

    def __hash__(self):
        return hash((id(self.algebra), self.vertex_dims, self.arrow_maps))

    @property
    def dim(self):
        return sum(self.vertex_dims)

    @cached_property
    def offsets(self):
        inicio = {}
        total = 0
        for v, d in zip(self.algebra.vertices, self.vertex_dims):
            inicio[v] = total
            total += d
        return inicio

    def dim_at(self, v):
        return self.vertex_dims[self.algebra.vertex_index[v]]

    def vertex_range(self, v):
        inicio = self.offsets[v]
        return range(inicio, inicio + self.dim_at(v))

    def arrow_map(self, nome):
        return self.arrow_maps[self.algebra.arrow_index[nome]]

    def support(self):
        return tuple(v for v, d in zip(self.algebra.vertices, self.vertex_dims) if d)

    def is_semisimple(self):
        """Semissimples sse o radical (ideal das flechas) age por zero."""
        return all(m.is_zero() for m in self.arrow_maps)

    def path_action(self, caminho):
        """Matriz (dim no alvo × dim na origem) da ação de um caminho."""
        matriz = RatMatrix.identity(self.dim_at(caminho.source))
        for nome in caminho.arrows:
            matriz = self.arrow_map(nome) @ matriz
        return matriz

    def embed_block(self, bloco, origem, destino):
        """Coloca um bloco M_destino × M_origem na matriz n × n de H_B(M)."""
        entradas = [[ZERO] * self.dim for _ in range(self.dim)]
        r0 = self.offsets[destino]
        c0 = self.offsets[origem]
        for i, linha in enumerate(bloco.entries):
            entradas[r0 + i][c0:c0 + bloco.cols] = linha
        return RatMatrix.from_rows(entradas, self.dim)

    @cached_property
    def action_matrices(self):
        """ρ_M(b) em H_B(M) para cada elemento b da base de caminhos."""
        return tuple(self.embed_block(self.path_action(p), p.source, p.target)
                     for p in self.algebra.path_basis)

    def action_of(self, coeficientes):
        resultado = RatMatrix.zeros(self.dim, self.dim)
        for c, matriz in zip(coeficientes, self.action_matrices):
            if c:
                resultado = resultado + matriz.scale(c)
        return resultado

    def projector(self, v):
        entradas = [[ZERO] * self.dim for _ in range(self.dim)]
        for i in self.vertex_range(v):
            entradas[i][i] = ONE
        return RatMatrix.from_rows(entradas, self.dim)

    @cached_property
    def full_arrow_matrices(self):
        return tuple(self.embed_block(m, a.source, a.target) for a, m in zip(self.algebra.arrows, self.arrow_maps))

    def local(self, vetor, v):
        return tuple(vetor[i] for i in self.vertex_range(v))

    def to_json(self):
        return {
            'dims': {v: d for v, d in zip(self.algebra.vertices, self.vertex_dims)},
            'maps': {a.name: m.to_json() for a, m in zip(self.algebra.arrows, self.arrow_maps)},
        }


def validate_module(alg, dims, maps=None):
    """Monta e valida um módulo a partir de {vértice: dim} e {flecha: matriz}."""
    maps = maps or {}
    desconhecidos = (set(dims) - set(alg.vertices)) | (set(maps) - set(alg.arrow_index))
    if desconhecidos:
        raise ValidationError(f"Vértices/flechas desconhecidos: {sorted(desconhecidos)}")
    dimensoes = []
    for v in alg.vertices:
        d = dims.get(v, 0)
        if not isinstance(d, int) or isinstance(d, bool) or d < 0:
            raise ValidationError(f"Dimensão inválida no vértice {v}")
        dimensoes.append(d)
    por_vertice = dict(zip(alg.vertices, dimensoes))
    matrizes = []
    for a in alg.arrows:
        forma = (por_vertice[a.target], por_vertice[a.source])
        dado = maps.get(a.name)
        if dado is None:
            matriz = RatMatrix.zeros(*forma)
        elif isinstance(dado, RatMatrix):
            matriz = dado
        else:
            matriz = RatMatrix.from_rows(dado, forma[1]) if forma[0] else RatMatrix.zeros(0, forma[1])
        if (matriz.rows, matriz.cols) != forma:
            raise ValidationError(f"Matriz da flecha {a.name} deve ser {forma[0]}x{forma[1]}")
        matrizes.append(matriz)
    modulo = FdModule(alg, tuple(dimensoes), tuple(matrizes))
    for indice, relacao in enumerate(alg.relations):
        origem = alg.arrow(relacao[0][1][0]).source
        destino = alg.arrow(relacao[0][1][-1]).target
        soma = RatMatrix.zeros(modulo.dim_at(destino), modulo.dim_at(origem))
        for c, caminho in relacao:
            soma = soma + modulo.path_action(Path(origem, destino, caminho)).scale(c)
        if not soma.is_zero():
            raise RelationViolated(f"Relação {indice} não se anula entre {origem} e {destino}",
                                   relacao=indice, vertices=[origem, destino])
    return modulo


def zero_module(alg):
    return validate_module(alg, {})


# --- MORFISMOS ---

@dataclass(frozen=True, eq=False)
class ModuleMap:
    source: FdModule
    target: FdModule
    blocks: tuple  # alinhado com os vértices

    def __post_init__(self):
        if self.source.algebra is not self.target.algebra:
            raise AlgebraMismatch("Morfismo entre módulos de álgebras diferentes")
        for v, bloco in zip(self.source.algebra.vertices, self.blocks):
            if (bloco.rows, bloco.cols) != (self.target.dim_at(v), self.source.dim_at(v)):
                raise ValidationError(f"Bloco do vértice {v} com forma incompatível")
        for a in self.source.algebra.arrows:
            esquerda = self.target.arrow_map(a.name) @ self.block(a.source)
            direita = self.block(a.target) @ self.source.arrow_map(a.name)
            if esquerda != direita:
                raise ValidationError(f"Morfismo não comuta com a flecha {a.name}")

    def __eq__(self, outro):
        return (isinstance(outro, ModuleMap) and self.source == outro.source
                and self.target == outro.target and self.blocks == outro.blocks)

    def __hash__(self):
        return hash(self.blocks)

    def block(self, v):
        return self.blocks[self.source.algebra.vertex_index[v]]

    @cached_property
    def matrix(self):
        return block_diagonal(*self.blocks)

    def compose(self, anterior):
        """self ∘ anterior."""
        if anterior.target != self.source:
            raise AlgebraMismatch("Composição de morfismos não encadeados")
        return ModuleMap(anterior.source, self.target,
                         tuple(a @ b for a, b in zip(self.blocks, anterior.blocks)))

    def __add__(self, outro):
        return ModuleMap(self.source, self.target, tuple(a + b for a, b in zip(self.blocks, outro.blocks)))

    def __sub__(self, outro):
        return ModuleMap(self.source, self.target, tuple(a - b for a, b in zip(self.blocks, outro.blocks)))

    def scale(self, c):
        return ModuleMap(self.source, self.target, tuple(b.scale(c) for b in self.blocks))

    def is_zero(self):
        return all(b.is_zero() for b in self.blocks)

    def rank(self):
        return self.matrix.rank()

    def is_injective(self):
        return self.rank() == self.source.dim

    def is_surjective(self):
        return self.rank() == self.target.dim

    def to_json(self):
        return {v: b.to_json() for v, b in zip(self.source.algebra.vertices, self.blocks)}


def identity_map(modulo):
    return ModuleMap(modulo, modulo, tuple(RatMatrix.identity(d) for d in modulo.vertex_dims))


def zero_map(origem, destino):
    return ModuleMap(origem, destino, tuple(RatMatrix.zeros(b, a) for a, b in
                                            zip(origem.vertex_dims, destino.vertex_dims)))


def map_from_matrix(origem, destino, matriz):
    """Recorta uma matriz H_B(destino) × H_B(origem) em blocos por vértice."""
    blocos = []
    for v in origem.algebra.vertices:
        linhas = destino.vertex_range(v)
        colunas = origem.vertex_range(v)
        blocos.append(matriz.block(linhas.start, linhas.stop, colunas.start, colunas.stop))
    return ModuleMap(origem, destino, tuple(blocos))


def hom_space(M, N):
    """Base de Hom(M, N): núcleo do sistema de comutação com as flechas."""
    if M.algebra is not N.algebra:
        raise AlgebraMismatch("Hom entre módulos de álgebras diferentes")
    alg = M.algebra
    inicio = {}
    total = 0
    for v in alg.vertices:
        inicio[v] = total
        total += N.dim_at(v) * M.dim_at(v)
    if total == 0:
        return []

    def variavel(v, r, c):
        return inicio[v] + r * M.dim_at(v) + c

    equacoes = []
    for a in alg.arrows:
        s, t = a.source, a.target
        Na = N.arrow_map(a.name)
        Ma = M.arrow_map(a.name)
        for r in range(N.dim_at(t)):
            for c in range(M.dim_at(s)):
                linha = [ZERO] * total
                for k in range(N.dim_at(s)):
                    if Na[r, k]:
                        linha[variavel(s, k, c)] += Na[r, k]
                for k in range(M.dim_at(t)):
                    if Ma[k, c]:
                        linha[variavel(t, r, k)] -= Ma[k, c]
                if any(linha):
                    equacoes.append(linha)
    solucoes = kernel(RatMatrix.from_rows(equacoes, total))
    base = []
    for vetor in solucoes.vectors():
        blocos = []
        for v in alg.vertices:
            linhas, colunas = N.dim_at(v), M.dim_at(v)
            blocos.append(RatMatrix(linhas, colunas, tuple(
                tuple(vetor[variavel(v, r, c)] for c in range(colunas)) for r in range(linhas))))
        base.append(ModuleMap(M, N, tuple(blocos)))
    return base


@dataclass(frozen=True)
class EndAlgebra:
    module: FdModule
    basis: tuple
    algebra: StructureAlgebra

    @property
    def dim(self):
        return len(self.basis)

    def matrices(self):
        return [f.matrix for f in self.basis]


def end_algebra(M):
    """End(M) com tabela de composição (b_i ∘ b_j)."""
    base = tuple(hom_space(M, M))
    nomes = [f"e{i}" for i in range(len(base))]
    return EndAlgebra(M, base, StructureAlgebra.from_matrices(nomes, [f.matrix for f in base]))


# --- SUBMÓDULOS ---

@dataclass(frozen=True)
class SubmoduleHandle:
    ambient: FdModule
    space: Subspace

    def __post_init__(self):
        if self.space.ambient_dim != self.ambient.dim:
            raise NotASubmodule("Subespaço fora de H_B do módulo ambiente")
        geradores = [self.ambient.projector(v) for v in self.ambient.algebra.vertices]
        geradores += list(self.ambient.full_arrow_matrices)
        for vetor in self.space.vectors():
            for g in geradores:
                if not self.space.contains(g.apply(vetor)):
                    raise NotASubmodule("Subespaço não é estável pelas flechas")

    @property
    def dim(self):
        return self.space.dim

    def is_zero(self):
        return self.space.is_zero()

    def slice(self, v):
        """Fatia e_v(U) em coordenadas locais do vértice v."""
        d = self.ambient.dim_at(v)
        return Subspace.span(d, [self.ambient.local(x, v) for x in self.space.vectors()])

    @cached_property
    def vertex_dims(self):
        return tuple(self.slice(v).dim for v in self.ambient.algebra.vertices)

    def support(self):
        return tuple(v for v, d in zip(self.ambient.algebra.vertices, self.vertex_dims) if d)

    def __add__(self, outro):
        return SubmoduleHandle(self.ambient, self.space + outro.space)

    def intersect(self, outro):
        return SubmoduleHandle(self.ambient, self.space.intersect(outro.space))

    def contains(self, outro):
        return self.space.contains_subspace(outro.space)

    def to_json(self):
        return self.space.to_json()


def full_submodule(M):
    return SubmoduleHandle(M, Subspace.full(M.dim))


def zero_submodule(M):
    return SubmoduleHandle(M, Subspace.zero(M.dim))


def spin(M, vetores):
    """Menor subespaço estável pelas flechas contendo os vetores."""
    vetores = [tuple(rat(x) for x in v) for v in vetores]
    iniciais = [M.projector(v).apply(x) for x in vetores for v in M.algebra.vertices]
    atual = Subspace.span(M.dim, iniciais)
    while True:
        novos = [m.apply(x) for x in atual.vectors() for m in M.full_arrow_matrices]
        proximo = atual + Subspace.span(M.dim, novos)
        if proximo.dim == atual.dim:
            return SubmoduleHandle(M, atual)
        atual = proximo


def core_submodule(M, vertices):
    """Maior submódulo contido em ⊕_{v ∈ vertices} M_v."""
    indices = [i for v in vertices for i in M.vertex_range(v)]
    atual = Subspace.span(M.dim, [_unitario(M.dim, i) for i in indices])
    while True:
        proximo = atual
        for m in M.full_arrow_matrices:
            proximo = proximo.intersect(atual.preimage(m))
        if proximo == atual:
            return SubmoduleHandle(M, atual)
        atual = proximo


def kernel_of(f):
    return SubmoduleHandle(f.source, kernel(f.matrix))


def image_of(f):
    return SubmoduleHandle(f.target, Subspace.full(f.source.dim).image(f.matrix))


def image_under(f, sub):
    return SubmoduleHandle(f.target, sub.space.image(f.matrix))


def preimage_under(f, sub):
    return SubmoduleHandle(f.source, sub.space.preimage(f.matrix))


def submodule_as_module(U):
    """U como módulo, com a inclusão U → M."""
    M = U.ambient
    alg = M.algebra
    fatias = {v: U.slice(v) for v in alg.vertices}
    mapas = {}
    for a in alg.arrows:
        colunas = []
        for b in fatias[a.source].vectors():
            coords = fatias[a.target].coordinates(M.arrow_map(a.name).apply(b))
            if coords is None:
                raise NotASubmodule("Fatia não estável pela flecha " + a.name)
            colunas.append(coords)
        mapas[a.name] = RatMatrix.from_columns(colunas, fatias[a.target].dim)
    sub = validate_module(alg, {v: s.dim for v, s in fatias.items()}, mapas)
    inclusao = ModuleMap(sub, M, tuple(RatMatrix.from_columns(fatias[v].vectors(), M.dim_at(v))
                                         for v in alg.vertices))
    return sub, inclusao


@dataclass(frozen=True)
class Quotient:
    module: FdModule
    projection: ModuleMap
    section: RatMatrix  # seção linear (não necessariamente morfismo)


def quotient_module(U):
    """M/U com a projeção e uma seção linear escolhida."""
    M = U.ambient
    alg = M.algebra
    apresentacoes = {v: quotient_presentation(M.dim_at(v), U.slice(v)) for v in alg.vertices}
    mapas = {}
    for a in alg.arrows:
        P = apresentacoes[a.target].projection
        S = apresentacoes[a.source].section
        mapas[a.name] = P @ M.arrow_map(a.name) @ S
    Q = validate_module(alg, {v: p.dim for v, p in apresentacoes.items()}, mapas)
    projecao = ModuleMap(M, Q, tuple(apresentacoes[v].projection for v in alg.vertices))
    secao = block_diagonal(*[apresentacoes[v].section for v in alg.vertices])
    return Quotient(Q, projecao, secao)


@dataclass(frozen=True)
class DirectSum:
    module: FdModule
    summands: tuple
    injections: tuple
    projections: tuple

    def combine(self, vetores):
        """Vetor de H_B(⊕M_k) a partir de um vetor por somando."""
        total = [ZERO] * self.module.dim
        for inj, v in zip(self.injections, vetores):
            for i, x in enumerate(inj.matrix.apply(tuple(v))):
                total[i] += x
        return tuple(total)

    def split(self, vetor):
        return [proj.matrix.apply(tuple(vetor)) for proj in self.projections]

    def combine_functionals(self, funcionais):
        """Funcional em H_B(⊕M_k) a partir de um funcional por somando."""
        total = [ZERO] * self.module.dim
        for proj, w in zip(self.projections, funcionais):
            for i, x in enumerate(proj.matrix.transpose().apply(tuple(w))):
                total[i] += x
        return tuple(total)

    def split_functional(self, funcional):
        return [inj.matrix.transpose().apply(tuple(funcional)) for inj in self.injections]


def direct_sum(modulos):
    """Soma direta com injeções e projeções coordenadas."""
    modulos = list(modulos)
    if not modulos:
        raise ValidationError("Soma direta vazia")
    alg = modulos[0].algebra
    if any(m.algebra is not alg for m in modulos):
        raise AlgebraMismatch("Soma direta de módulos de álgebras diferentes")
    dims = {v: sum(m.dim_at(v) for m in modulos) for v in alg.vertices}
    mapas = {a.name: block_diagonal(*[m.arrow_map(a.name) for m in modulos]) for a in alg.arrows}
    soma = validate_module(alg, dims, mapas)
    injecoes = []
    projecoes = []
    for k, m in enumerate(modulos):
        blocos = []
        for v in alg.vertices:
            antes = sum(n.dim_at(v) for n in modulos[:k])
            entradas = [[ONE if i == antes + j else ZERO for j in range(m.dim_at(v))]
                        for i in range(dims[v])]
            blocos.append(RatMatrix.from_rows(entradas, m.dim_at(v)) if dims[v] else RatMatrix.zeros(0, m.dim_at(v)))
        inj = ModuleMap(m, soma, tuple(blocos))
        injecoes.append(inj)
        projecoes.append(ModuleMap(soma, m, tuple(b.transpose() for b in blocos)))
    return DirectSum(soma, tuple(modulos), tuple(injecoes), tuple(projecoes))


def power(M, m):
    """M^m; para m = 0 o módulo nulo sem somandos."""
    if m == 0:
        return DirectSum(zero_module(M.algebra), (), (), ())
    return direct_sum([M] * m)


def map_into_sum(soma, componentes):
    """Morfismo X → ⊕M_k a partir de componentes X → M_k."""
    total = None
    for inj, f in zip(soma.injections, componentes):
        parcela = inj.compose(f)
        total = parcela if total is None else total + parcela
    return total


def map_from_sum(soma, componentes):
    """Morfismo ⊕M_k → Y a partir de componentes M_k → Y."""
    total = None
    for proj, f in zip(soma.projections, componentes):
        parcela = f.compose(proj)
        total = parcela if total is None else total + parcela
    return total


# --- PROJETIVOS, TRAÇO E DUALIDADE ---

def projective(alg, v):
    """P(v) = A·e_v: no vértice w, os caminhos da base de v para w."""
    por_vertice = {w: [p for p in alg.path_basis if p.source == v and p.target == w] for w in alg.vertices}
    mapas = {}
    for a in alg.arrows:
        origem = por_vertice[a.source]
        destino = por_vertice[a.target]
        colunas = []
        for p in origem:
            coords = alg.path_product(Path(a.source, a.target, (a.name,)), p)
            colunas.append(tuple(coords[alg.basis_index[q]] for q in destino))
        mapas[a.name] = RatMatrix.from_columns(colunas, len(destino))
    return validate_module(alg, {w: len(c) for w, c in por_vertice.items()}, mapas)


def simple(alg, v):
    return validate_module(alg, {v: 1})


def trace_quotient(M, vertices):
    """
    U = soma das imagens de todos os morfismos P(v) → M, v ∈ vertices;
    M/U é o maior quociente suportado fora de `vertices`.
    """
    imagens = []
    for v in vertices:
        for f in hom_space(projective(M.algebra, v), M):
            imagens.append(image_of(f).space)
    U = SubmoduleHandle(M, sum_all(M.dim, imagens))
    return U, quotient_module(U)


def trace_submodule(M, vertices):
    """Mesmo U de trace_quotient, calculado como spin das fatias."""
    return spin(M, [_unitario(M.dim, i) for v in vertices for i in M.vertex_range(v)])


def split_section(p):
    """Morfismo s com p∘s = id, ou None se p não cinde."""
    base = hom_space(p.target, p.source)
    alvo = identity_map(p.target).matrix.flatten()
    if not base:
        return None if any(alvo) else zero_map(p.target, p.source)
    sistema = RatMatrix.from_columns([p.compose(s).matrix.flatten() for s in base], len(alvo))
    coefs = solve(sistema, alvo)
    if coefs is None:
        return None
    return _combinacao(base, coefs, p.target, p.source)


def split_retraction(i):
    """Morfismo r com r∘i = id, ou None se i não cinde."""
    base = hom_space(i.target, i.source)
    alvo = identity_map(i.source).matrix.flatten()
    if not base:
        return None if any(alvo) else zero_map(i.target, i.source)
    sistema = RatMatrix.from_columns([r.compose(i).matrix.flatten() for r in base], len(alvo))
    coefs = solve(sistema, alvo)
    if coefs is None:
        return None
    return _combinacao(base, coefs, i.target, i.source)


def _combinacao(base, coefs, origem, destino):
    total = zero_map(origem, destino)
    for c, f in zip(coefs, base):
        if c:
            total = total + f.scale(c)
    return total


def dual_module(M):
    """D(M) sobre a álgebra oposta: mesmas dimensões, flechas transpostas."""
    oposta = M.algebra.opposite
    mapas = {a.name: m.transpose() for a, m in zip(M.algebra.arrows, M.arrow_maps)}
    return validate_module(oposta, dict(zip(M.algebra.vertices, M.vertex_dims)), mapas)


def dual_map(f, fonte_dual=None, alvo_dual=None):
    """D(f): D(N) → D(M) para f: M → N."""
    fonte_dual = fonte_dual or dual_module(f.target)
    alvo_dual = alvo_dual or dual_module(f.source)
    return ModuleMap(fonte_dual, alvo_dual, tuple(b.transpose() for b in f.blocks))


def annihilator_submodule(D_M, sub):
    """Anulador de um submódulo de M, como submódulo de D(M)."""
    return SubmoduleHandle(D_M, sub.space.annihilator())


def power_map(M, coeficientes, origem=None, destino=None):
    """
    Morfismo M^a → M^b cuja componente (j, i) é coeficientes[j][i]·id_M.
    Em cada vértice v o bloco é C ⊗ I_{d_v} (somandos contíguos por vértice).
    """
    C = coeficientes if isinstance(coeficientes, RatMatrix) else RatMatrix.from_rows(coeficientes)
    origem = origem or power(M, C.cols)
    destino = destino or power(M, C.rows)
    blocos = tuple(kron(C, RatMatrix.identity(d)) for d in M.vertex_dims)
    return ModuleMap(origem.module, destino.module, blocos)
