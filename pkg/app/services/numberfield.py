"""
Corpos de números Q[x]/(f), f mônico com coeficientes inteiros.

A irredutibilidade de f é assumida; verificamos apenas que f é livre de
quadrados (gcd(f, f') = 1). Com f redutível o anel é um produto de corpos e a
inversão acusa divisores de zero como DivisionByZero.
"""
from dataclasses import dataclass
from functools import cached_property

from sympy import Poly, QQ, symbols
from sympy.polys.polyerrors import NotInvertible

from app.errors import DivisionByZero, EmbeddingMissing, FieldMismatch, ReduciblePolynomial, ValidationError
from app.services.exactlin import ZERO, RatMatrix, Subspace, kernel, rat, rat_to_str

X = symbols('x')


def _poly(coeficientes):
    """Polinômio sobre QQ a partir de coeficientes com termo constante primeiro."""
    return Poly(list(reversed([rat(c) for c in coeficientes])) or [ZERO], X, domain=QQ)


def _coeficientes(p, grau):
    coefs = [QQ.from_sympy(c) for c in reversed(p.all_coeffs())]
    coefs = coefs + [ZERO] * (grau - len(coefs))
    return tuple(coefs[:grau])


@dataclass(frozen=True)
class NumberField:
    polynomial: tuple

    def __post_init__(self):
        coefs = tuple(self.polynomial)
        if len(coefs) < 2:
            raise ValidationError("O polinômio definidor precisa ter grau >= 1", polinomio=list(coefs))
        if not all(isinstance(c, int) and not isinstance(c, bool) for c in coefs):
            raise ValidationError("O polinômio definidor precisa ter coeficientes inteiros", polinomio=list(coefs))
        if coefs[-1] != 1:
            raise ValidationError("O polinômio definidor precisa ser mônico", polinomio=list(coefs))
        object.__setattr__(self, 'polynomial', coefs)
        f = self.modulus
        if f.gcd(f.diff(X)).degree() > 0:
            raise ReduciblePolynomial("O polinômio definidor não é livre de quadrados", polinomio=list(coefs))

    @classmethod
    def rationals(cls):
        """Q visto como Q[x]/(x)."""
        return cls((0, 1))

    @property
    def degree(self):
        return len(self.polynomial) - 1

    @cached_property
    def modulus(self):
        return _poly(self.polynomial)

    def element(self, coeficientes):
        coefs = tuple(rat(c) for c in coeficientes)
        if len(coefs) > self.degree:
            # reduz representantes longos módulo f
            return self.from_poly(_poly(coefs))
        return NumberFieldElem(coefs + (ZERO,) * (self.degree - len(coefs)), self)

    def from_poly(self, p):
        return NumberFieldElem(_coeficientes(p.rem(self.modulus), self.degree), self)

    def scalar(self, valor):
        return self.element([rat(valor)])

    def zero(self):
        return self.element([])

    def one(self):
        return self.scalar(1)

    def gen(self):
        return self.from_poly(Poly(X, X, domain=QQ))

    def to_json(self):
        return list(self.polynomial)


@dataclass(frozen=True)
class NumberFieldElem:
    coefficients: tuple
    field: NumberField

    def __post_init__(self):
        if len(self.coefficients) != self.field.degree:
            raise ValidationError("Número de coeficientes diferente do grau do corpo")

    def _poly(self):
        return _poly(self.coefficients)

    def _compativel(self, outro):
        if isinstance(outro, NumberFieldElem):
            if outro.field != self.field:
                raise FieldMismatch("Elementos de corpos diferentes",
                                    corpos=[self.field.to_json(), outro.field.to_json()])
            return outro
        return self.field.scalar(outro)

    def __add__(self, outro):
        outro = self._compativel(outro)
        return NumberFieldElem(tuple(a + b for a, b in zip(self.coefficients, outro.coefficients)), self.field)

    __radd__ = __add__

    def __sub__(self, outro):
        outro = self._compativel(outro)
        return NumberFieldElem(tuple(a - b for a, b in zip(self.coefficients, outro.coefficients)), self.field)

    def __neg__(self):
        return NumberFieldElem(tuple(-a for a in self.coefficients), self.field)

    def __mul__(self, outro):
        outro = self._compativel(outro)
        return self.field.from_poly(self._poly() * outro._poly())

    __rmul__ = __mul__

    def is_zero(self):
        return not any(self.coefficients)

    def inverse(self):
        if self.is_zero():
            raise DivisionByZero("Inverso do elemento nulo")
        try:
            inverso = self._poly().invert(self.field.modulus)
        except NotInvertible:
            raise DivisionByZero("Elemento é divisor de zero (polinômio definidor redutível)")
        return self.field.from_poly(inverso)

    def __truediv__(self, outro):
        return self * self._compativel(outro).inverse()

    def mult_matrix(self):
        """Matriz racional da multiplicação por este elemento na base 1, x, x², ..."""
        colunas = []
        potencia = self.field.one()
        gerador = self.field.gen()
        for _ in range(self.field.degree):
            colunas.append((self * potencia).coefficients)
            potencia = potencia * gerador
        return RatMatrix.from_columns(colunas, self.field.degree)

    def to_json(self):
        return {'field': self.field.to_json(), 'coefficients': [rat_to_str(c) for c in self.coefficients]}


@dataclass(frozen=True)
class FieldEmbedding:
    """Mergulho K ↪ L dado pela imagem do gerador de K."""
    source: NumberField
    target: NumberField
    image_of_generator: NumberFieldElem

    def __post_init__(self):
        if self.image_of_generator.field != self.target:
            raise FieldMismatch("Imagem do gerador fora do corpo alvo")
        valor = self.target.zero()
        for c in reversed(self.source.polynomial):
            valor = valor * self.image_of_generator + self.target.scalar(c)
        if not valor.is_zero():
            raise EmbeddingMissing("A imagem declarada não é raiz do polinômio de K em L")

    @classmethod
    def rational(cls, alvo):
        return cls(NumberField.rationals(), alvo, alvo.zero())

    def apply(self, elemento):
        if elemento.field != self.source:
            raise FieldMismatch("Elemento fora do corpo de origem do mergulho")
        valor = self.target.zero()
        potencia = self.target.one()
        for c in elemento.coefficients:
            valor = valor + potencia * c
            potencia = potencia * self.image_of_generator
        return valor

    def _potencias(self):
        potencias = [self.target.one()]
        for _ in range(self.source.degree - 1):
            potencias.append(potencias[-1] * self.image_of_generator)
        return potencias

    def kernel_over_K(self, elementos):
        """Base sobre K das relações K-lineares Σ k_i·l_i = 0 entre os elementos dados."""
        grau_k = self.source.degree
        for elem in elementos:
            if elem.field != self.target:
                raise FieldMismatch("Elemento fora do corpo L")
        if not elementos:
            return []
        potencias = self._potencias()
        colunas = [(p * elem).coefficients for elem in elementos for p in potencias]
        nucleo_q = kernel(RatMatrix.from_columns(colunas, self.target.degree))

        gerador = self.source.gen()
        escolhidos = []
        coberto = Subspace.zero(nucleo_q.ambient_dim)
        for vetor in nucleo_q.vectors():
            if coberto.contains(vetor):
                continue
            tupla = tuple(self.source.element(vetor[i * grau_k:(i + 1) * grau_k]) for i in range(len(elementos)))
            escolhidos.append(tupla)
            multiplos = []
            atual = tupla
            for _ in range(grau_k):
                multiplos.append(tuple(c for k in atual for c in k.coefficients))
                atual = tuple(k * gerador for k in atual)
            coberto = coberto + Subspace.span(nucleo_q.ambient_dim, multiplos)
            if coberto == nucleo_q:
                break
        return escolhidos

    def independent(self, elementos):
        return not self.kernel_over_K(elementos)


def as_rational(elemento):
    """Valor racional de um elemento de Q = Q[x]/(x)."""
    if elemento.field.degree != 1:
        raise FieldMismatch("Elemento não pertence a Q")
    return elemento.coefficients[0]


