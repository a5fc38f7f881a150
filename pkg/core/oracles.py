"""
Cálculos de referencia independientes del motor, apoyados en sympy.

Sirven de oráculo para las suites de verificación y para el comando compose1:
composición univariante truncada, polinomios de Bell parciales B_{n,k} (por
sympy.bell y por composición simbólica) y el coproducto clásico de Faà di Bruno
mediante coeficientes multinomiales.
"""
from collections import defaultdict
from fractions import Fraction
from math import factorial
from typing import Dict, List, Sequence, Tuple

import sympy
from sympy.ntheory.multinomial import multinomial_coefficients
from sympy.polys.domains import QQ
from sympy.polys.rings import ring
from sympy.polys.ring_series import rs_pow

from core.errors import PreconditionError
from core.lambda_core import PartitionVector, VectorMultiset


def _to_qq(value) -> "QQ":
    value = Fraction(value)
    return QQ(value.numerator, value.denominator)


def _to_fraction(value) -> Fraction:
    return Fraction(int(value.numerator), int(value.denominator))


def _pure(n: int) -> PartitionVector:
    """El vector (n) = (n, 0, 0, ...) del caso clásico."""
    return PartitionVector(((1, n),))


# ============================================================================
# COMPOSICIÓN UNIVARIANTE
# ============================================================================

def univariate_compose(outer: Sequence, inner: Sequence, truncation: int) -> List[Fraction]:
    """
    Composición g(f(t)) de series exponenciales truncadas.

    Args:
        outer: coeficientes exponenciales g_1..g_W de g (g(t) = Σ g_n tⁿ/n!)
        inner: coeficientes exponenciales f_1..f_W de f (sin término constante)
        truncation: W

    Returns:
        Lista [h_1, ..., h_W] con h = g∘f en la misma normalización
    """
    if truncation < 1:
        raise PreconditionError(f"La truncación debe ser ≥ 1 (recibido {truncation})")
    R, t = ring("t", QQ)
    prec = truncation + 1
    f = sum((_to_qq(Fraction(c) / factorial(n)) * t ** n for n, c in enumerate(inner[:truncation], 1)), R.zero)
    g_of_f = R.zero
    for n, c in enumerate(outer[:truncation], 1):
        if c:
            g_of_f += _to_qq(Fraction(c) / factorial(n)) * rs_pow(f, n, t, prec)
    coefficients = dict(g_of_f.items())
    return [
        _to_fraction(coefficients.get((n,), QQ.zero)) * factorial(n)
        for n in range(1, truncation + 1)
    ]


# ============================================================================
# POLINOMIOS DE BELL
# ============================================================================

def _monomial_from_exponents(exponents: Sequence[int]) -> VectorMultiset:
    """x_1^{e_1} x_2^{e_2} ... ↦ ∏ A_{(j)}^{e_j}"""
    vectors = [_pure(j) for j, e in enumerate(exponents, 1) for _ in range(e)]
    return VectorMultiset.of(vectors)


def bell_polynomial(n: int, k: int) -> Dict[VectorMultiset, Fraction]:
    """B_{n,k}(x_1, ..., x_{n−k+1}) con sympy.bell, leído como polinomio en los A_{(j)}."""
    if n < 1 or k < 1 or k > n:
        return {}
    symbols = sympy.symbols(f"x1:{n - k + 2}")
    expression = sympy.bell(n, k, symbols)
    poly = sympy.Poly(sympy.expand(expression), *symbols)
    return {
        _monomial_from_exponents(exponents): Fraction(int(c.p), int(c.q))
        for exponents, c in poly.terms()
        if c != 0
    }


def bell_by_composition(n: int, k: int) -> Dict[VectorMultiset, Fraction]:
    """
    B_{n,k} como n!·[tⁿ] de (Σ_j x_j t^j/j!)^k / k!, calculado por composición
    truncada en el anillo ℚ[t, x_1..x_n].
    """
    if n < 1 or k < 1 or k > n:
        return {}
    names = ",".join(["t"] + [f"x{j}" for j in range(1, n + 1)])
    R, t, *xs = ring(names, QQ)
    inner = sum((xs[j - 1] * t ** j * _to_qq(Fraction(1, factorial(j))) for j in range(1, n + 1)), R.zero)
    powered = rs_pow(inner, k, t, n + 1)
    result: Dict[VectorMultiset, Fraction] = defaultdict(Fraction)
    for exponents, c in powered.items():
        if exponents[0] != n:
            continue
        result[_monomial_from_exponents(exponents[1:])] += _to_fraction(c) * Fraction(factorial(n), factorial(k))
    return {m: c for m, c in result.items() if c != 0}


# ============================================================================
# FAÀ DI BRUNO CLÁSICO
# ============================================================================

def multinomial_delta(n: int):
    """
    Δ(A_n) = Σ_k (1/k!) Σ_{n_1+⋯+n_k=n, n_i ≥ 1} (n; n_1..n_k) ∏A_{n_i} ⊗ A_k
    """
    from core.bialgebra import PTensor

    terms: Dict[Tuple[VectorMultiset, VectorMultiset], Fraction] = defaultdict(Fraction)
    for k in range(1, n + 1):
        right = VectorMultiset((_pure(k),))
        for composition, coefficient in multinomial_coefficients(k, n).items():
            if min(composition) < 1:
                continue
            left = VectorMultiset.of(_pure(part) for part in composition)
            terms[(left, right)] += Fraction(coefficient, factorial(k))
    return PTensor.from_mapping(terms)
