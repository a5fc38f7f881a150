"""
Vectores de partición λ ∈ Λ y multiconjuntos de vectores.

Un vector de partición es una sucesión finitamente soportada de enteros no
negativos λ = (λ_1, λ_2, ...). Se guarda en forma dispersa canónica: pares
(k, λ_k) con λ_k > 0 ordenados por k. Es el tipo índice que consumen todos los
demás módulos (series, biálgebra, modelo de conjuntos).

Orden canónico: primero por peso wt(λ) = Σ k·λ_k y, a igual peso,
lexicográfico decreciente sobre el prefijo denso, de modo que
enumerate_vectors(3, "exact") devuelve [(3), (1,1), (0,0,1)].
"""
from collections import Counter
from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from math import factorial, prod
from typing import Dict, Iterable, Iterator, List, Mapping, Sequence, Tuple, Union

from core.errors import FormatError, PreconditionError


# ============================================================================
# VECTOR DE PARTICIÓN
# ============================================================================

@dataclass(frozen=True)
class PartitionVector:
    """
    Vector λ en forma dispersa canónica.

    Attributes:
        entries: pares (k, λ_k) con k ≥ 1 y λ_k ≥ 1, ordenados por k
    """
    entries: Tuple[Tuple[int, int], ...] = ()

    def __post_init__(self):
        previous = 0
        for index, multiplicity in self.entries:
            if index <= previous or multiplicity <= 0:
                raise PreconditionError(f"Entradas no canónicas para PartitionVector: {self.entries}")
            previous = index

    @classmethod
    def from_mapping(cls, mapping: Mapping[int, int]) -> "PartitionVector":
        """Construye el vector desde {k: λ_k}; descarta multiplicidades cero."""
        for index, multiplicity in mapping.items():
            if index < 1 or multiplicity < 0:
                raise PreconditionError(f"Índice o multiplicidad inválidos: {index} -> {multiplicity}")
        return cls(tuple(sorted((k, m) for k, m in mapping.items() if m > 0)))

    @cached_property
    def dense(self) -> Tuple[int, ...]:
        """Prefijo denso (λ_1, ..., λ_K) sin ceros finales; () para el vector cero."""
        if not self.entries:
            return ()
        values = [0] * self.entries[-1][0]
        for index, multiplicity in self.entries:
            values[index - 1] = multiplicity
        return tuple(values)

    @cached_property
    def length(self) -> int:
        """|λ| = Σ_k λ_k"""
        return sum(m for _, m in self.entries)

    @cached_property
    def weight(self) -> int:
        """wt(λ) = Σ_k k·λ_k"""
        return sum(k * m for k, m in self.entries)

    @cached_property
    def sort_key(self) -> Tuple[int, Tuple[int, ...]]:
        return (self.weight, tuple(-m for m in self.dense))

    @property
    def is_zero(self) -> bool:
        return not self.entries

    def get(self, index: int) -> int:
        """λ_k (cero si el índice no está en el soporte)."""
        for k, m in self.entries:
            if k == index:
                return m
        return 0

    def as_dict(self) -> Dict[int, int]:
        return dict(self.entries)

    def __add__(self, other: "PartitionVector") -> "PartitionVector":
        return vec_add(self, other)

    def __lt__(self, other: "PartitionVector") -> bool:
        return self.sort_key < other.sort_key

    def encode(self) -> str:
        return encode_vector(self)

    def __str__(self) -> str:
        return f"({self.encode()})"


ZERO = PartitionVector()


# ============================================================================
# MULTICONJUNTO DE VECTORES
# ============================================================================

@dataclass(frozen=True)
class VectorMultiset:
    """
    Multiconjunto 𝛍 de vectores no nulos, guardado como sucesión ordenada
    canónicamente (con repeticiones).

    Representa a la vez el producto ∏_{μ∈𝛍} A_μ de la biálgebra y la clase de
    isomorfismo de una celda de T₁𝐒.
    """
    elements: Tuple[PartitionVector, ...] = ()

    def __post_init__(self):
        if any(v.is_zero for v in self.elements):
            raise PreconditionError("Un VectorMultiset no admite el vector cero")
        keys = [v.sort_key for v in self.elements]
        if keys != sorted(keys):
            raise PreconditionError("Elementos de VectorMultiset fuera del orden canónico")

    @classmethod
    def of(cls, vectors: Iterable[PartitionVector]) -> "VectorMultiset":
        """Construye el multiconjunto canónico a partir de cualquier iterable."""
        return cls(tuple(sorted(vectors, key=lambda v: v.sort_key)))

    @cached_property
    def counts(self) -> Tuple[Tuple[PartitionVector, int], ...]:
        """Pares (vector distinto, multiplicidad) en orden canónico."""
        counter = Counter(self.elements)
        return tuple(sorted(counter.items(), key=lambda item: item[0].sort_key))

    @cached_property
    def weight(self) -> int:
        """Σ_{μ∈𝛍} wt(μ), el tamaño de t₀₁ de la celda correspondiente."""
        return sum(v.weight for v in self.elements)

    @cached_property
    def sort_key(self) -> Tuple:
        return (self.weight, len(self.elements), tuple(v.sort_key for v in self.elements))

    @property
    def is_empty(self) -> bool:
        return not self.elements

    def union(self, other: "VectorMultiset") -> "VectorMultiset":
        """Unión de multiconjuntos (producto de monomios)."""
        return VectorMultiset.of(self.elements + other.elements)

    def __iter__(self) -> Iterator[PartitionVector]:
        return iter(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __str__(self) -> str:
        return "{" + ",".join(str(v) for v in self.elements) + "}"


EMPTY_MULTISET = VectorMultiset()


class EnumerationMode(str, Enum):
    EXACT = "exact"
    UPTO = "upto"


# ============================================================================
# OPERACIONES
# ============================================================================

def canonical(raw: Sequence[int]) -> PartitionVector:
    """
    Forma canónica de una lista densa de enteros no negativos.

    Examples:
        >>> canonical([2, 0, 1, 3]).entries
        ((1, 2), (3, 1), (4, 3))
        >>> canonical([0, 0, 0]).is_zero
        True
    """
    for value in raw:
        if value < 0:
            raise PreconditionError(f"Entrada negativa en vector de partición: {list(raw)}")
    return PartitionVector(tuple((i + 1, m) for i, m in enumerate(raw) if m > 0))


def length(vector: PartitionVector) -> int:
    return vector.length


def weight(vector: PartitionVector) -> int:
    return vector.weight


def autiv(vector: PartitionVector) -> int:
    """autiv(λ) = ∏_k (k!)^{λ_k}·λ_k!  (1 para el vector cero)."""
    return prod(factorial(k) ** m * factorial(m) for k, m in vector.entries)


def verschiebung(n: int, vector: PartitionVector) -> PartitionVector:
    """Vⁿ: la entrada λ_k pasa a la posición n·k."""
    if n < 1:
        raise PreconditionError(f"El operador de Verschiebung requiere n ≥ 1 (recibido {n})")
    if n == 1:
        return vector
    return PartitionVector(tuple((n * k, m) for k, m in vector.entries))


def vec_add(first: PartitionVector, second: PartitionVector) -> PartitionVector:
    """Suma coordenada a coordenada."""
    if first.is_zero:
        return second
    if second.is_zero:
        return first
    total = Counter(first.as_dict())
    total.update(second.as_dict())
    return PartitionVector.from_mapping(total)


def vec_sum(vectors: Iterable[PartitionVector]) -> PartitionVector:
    total: Counter = Counter()
    for vector in vectors:
        total.update(vector.as_dict())
    return PartitionVector.from_mapping(total)


def rep_count(multiset: VectorMultiset) -> int:
    """|rep(𝛍)| = ∏ (multiplicidad de cada vector distinto)!"""
    return prod(factorial(m) for _, m in multiset.counts)


def multiset_autiv(multiset: VectorMultiset) -> int:
    """autiv(𝛍) = ∏_{μ∈𝛍} autiv(μ) · |rep(𝛍)|"""
    return prod(autiv(v) for v in multiset.elements) * rep_count(multiset)


def integer_partitions(n: int, _pivot: int = 1) -> Iterator[Tuple[int, ...]]:
    """Enumera las particiones enteras de n como tuplas crecientes de partes."""
    if n == 0:
        yield ()
        return
    yield (n,)
    for i in range(_pivot, n // 2 + 1):
        for rest in integer_partitions(n - i, _pivot=i):
            yield (i,) + rest


def partition_to_vector(parts: Iterable[int]) -> PartitionVector:
    """Partición entera → vector de multiplicidades (λ_k = número de partes iguales a k)."""
    return PartitionVector.from_mapping(Counter(parts))


def enumerate_vectors(w: int, mode: Union[EnumerationMode, str] = EnumerationMode.EXACT) -> List[PartitionVector]:
    """
    Todos los λ no nulos con wt(λ) = w (exact) o 1 ≤ wt(λ) ≤ w (upto), en orden canónico.
    """
    if w < 0:
        raise PreconditionError(f"Peso negativo: {w}")
    mode = EnumerationMode(mode)
    weights = [w] if mode is EnumerationMode.EXACT else list(range(1, w + 1))
    vectors = [
        partition_to_vector(parts)
        for total in weights if total > 0
        for parts in integer_partitions(total)
    ]
    return sorted(vectors, key=lambda v: v.sort_key)


def enumerate_multisets(size: int, max_weight: int) -> List[VectorMultiset]:
    """
    Multiconjuntos de exactamente `size` vectores no nulos con peso total ≤ max_weight,
    en orden canónico. Son las clases de celdas de T₁𝐒 con |t₁₁| = size.
    """
    pool = enumerate_vectors(max_weight, EnumerationMode.UPTO)
    result: List[VectorMultiset] = []

    def _extend(start: int, chosen: List[PartitionVector], budget: int) -> None:
        if len(chosen) == size:
            result.append(VectorMultiset(tuple(chosen)))
            return
        for position in range(start, len(pool)):
            vector = pool[position]
            if vector.weight > budget:
                continue
            chosen.append(vector)
            _extend(position, chosen, budget - vector.weight)
            chosen.pop()

    _extend(0, [], max_weight)
    return sorted(result, key=lambda m: m.sort_key)


# ============================================================================
# CODIFICACIÓN DE TEXTO
# ============================================================================

def encode_vector(vector: PartitionVector) -> str:
    """Prefijo denso separado por comas; el vector cero se codifica como "0"."""
    if vector.is_zero:
        return "0"
    return ",".join(str(m) for m in vector.dense)


def decode_vector(text: str) -> PartitionVector:
    """Inversa de encode_vector. Acepta espacios y paréntesis envolventes."""
    cleaned = text.strip().strip("()").replace(" ", "")
    if not cleaned:
        raise FormatError(f"Codificación de λ vacía: {text!r}")
    try:
        values = [int(part) for part in cleaned.split(",")]
    except ValueError:
        raise FormatError(f"Codificación de λ inválida: {text!r}")
    if any(v < 0 for v in values):
        raise FormatError(f"Codificación de λ con entradas negativas: {text!r}")
    return canonical(values)


def decode_multiset(text: str) -> VectorMultiset:
    """
    Decodifica un multiconjunto escrito como "{(1),(2)}" o "{}".
    """
    cleaned = text.strip()
    if not (cleaned.startswith("{") and cleaned.endswith("}")):
        raise FormatError(f"Multiconjunto inválido (se esperaba {{...}}): {text!r}")
    body = cleaned[1:-1].strip()
    if not body:
        return EMPTY_MULTISET
    vectors: List[PartitionVector] = []
    depth = 0
    current = ""
    for char in body:
        if char == "(":
            depth += 1
            current = ""
        elif char == ")":
            depth -= 1
            vectors.append(decode_vector(current))
        elif depth == 1:
            current += char
        elif char not in ", ":
            raise FormatError(f"Carácter inesperado {char!r} en multiconjunto {text!r}")
        if depth not in (0, 1):
            raise FormatError(f"Paréntesis desbalanceados en multiconjunto {text!r}")
    if depth != 0:
        raise FormatError(f"Paréntesis desbalanceados en multiconjunto {text!r}")
    if any(v.is_zero for v in vectors):
        raise PreconditionError(f"El multiconjunto contiene el vector cero: {text!r}")
    return VectorMultiset.of(vectors)
