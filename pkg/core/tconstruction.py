"""
Modelo explícito de T𝐒 sobre conjuntos finitos {0..n−1} y sobreyecciones.

Un n-símplice es una pirámide de conjuntos t_ij (0 ≤ i ≤ j ≤ n) con flechas
izquierdas L(i,j): t_ij ↠ t_{i,j−1} y derechas R(i,j): t_ij ↠ t_{i+1,j}. Las
flechas horizontales t_ii ↠ t_{i+1,i+1} no se guardan: se recalculan desde el
triángulo inferior y se comprueba su coherencia. Todos los cuadrados
elementales deben conmutar y ser pullbacks de conjuntos.

Caras y degeneraciones se obtienen precomponiendo con las aplicaciones
cosimpliciales δ_k y σ_k; cuando un índice se salta, la flecha resultante es
la composición de las flechas originales.
"""
from collections import Counter
from dataclasses import dataclass
from itertools import product
from math import factorial
from typing import Dict, Iterator, List, Mapping, Optional, Sequence, Tuple

from core.errors import InvariantViolation, PreconditionError
from core.lambda_core import PartitionVector, VectorMultiset
from core.logging import logger


Position = Tuple[int, int]


# ============================================================================
# SOBREYECCIONES
# ============================================================================

@dataclass(frozen=True)
class FinSurjection:
    """
    Sobreyección {0..n−1} ↠ {0..m−1} dada por su tabla de asignación.

    Attributes:
        source_size: n
        target_size: m
        assignment: assignment[x] es la imagen de x
    """
    source_size: int
    target_size: int
    assignment: Tuple[int, ...]

    def __post_init__(self):
        if len(self.assignment) != self.source_size:
            raise PreconditionError(
                f"Asignación de longitud {len(self.assignment)} para un origen de tamaño {self.source_size}"
            )
        if set(self.assignment) != set(range(self.target_size)):
            raise PreconditionError(
                f"La aplicación {list(self.assignment)} no es sobreyectiva sobre {self.target_size} elementos"
            )

    @classmethod
    def from_assignment(cls, assignment: Sequence[int], target_size: Optional[int] = None) -> "FinSurjection":
        assignment = tuple(assignment)
        if target_size is None:
            target_size = max(assignment) + 1 if assignment else 0
        return cls(len(assignment), target_size, assignment)

    @classmethod
    def identity(cls, n: int) -> "FinSurjection":
        return cls(n, n, tuple(range(n)))

    @classmethod
    def to_point(cls, n: int) -> "FinSurjection":
        """n ↠ 1 (requiere n ≥ 1)."""
        if n < 1:
            raise PreconditionError("No hay sobreyección del conjunto vacío sobre un punto")
        return cls(n, 1, (0,) * n)

    def __call__(self, element: int) -> int:
        return self.assignment[element]

    def then(self, other: "FinSurjection") -> "FinSurjection":
        """other ∘ self"""
        if other.source_size != self.target_size:
            raise PreconditionError(
                f"No se pueden componer {self.source_size}↠{self.target_size} y {other.source_size}↠{other.target_size}"
            )
        return FinSurjection(self.source_size, other.target_size, tuple(other.assignment[y] for y in self.assignment))

    def fibers(self) -> Tuple[Tuple[int, ...], ...]:
        buckets: List[List[int]] = [[] for _ in range(self.target_size)]
        for x, y in enumerate(self.assignment):
            buckets[y].append(x)
        return tuple(tuple(b) for b in buckets)

    @property
    def is_bijective(self) -> bool:
        return self.source_size == self.target_size

    def inverse(self) -> "FinSurjection":
        if not self.is_bijective:
            raise PreconditionError("Solo las biyecciones tienen inversa")
        inverse = [0] * self.source_size
        for x, y in enumerate(self.assignment):
            inverse[y] = x
        return FinSurjection(self.source_size, self.source_size, tuple(inverse))


def fiber_profile(surjection: FinSurjection) -> PartitionVector:
    """λ con λ_k = número de fibras de tamaño k."""
    return PartitionVector.from_mapping(Counter(len(f) for f in surjection.fibers()))


def surjection_from_profile(profile: PartitionVector) -> FinSurjection:
    """Representante canónico de la clase λ: fibras consecutivas, primero las más pequeñas."""
    assignment: List[int] = []
    block = 0
    for size, count in profile.entries:
        for _ in range(count):
            assignment.extend([block] * size)
            block += 1
    return FinSurjection(len(assignment), block, tuple(assignment))


def surjections(source_size: int, target_size: int) -> Iterator[FinSurjection]:
    """Todas las sobreyecciones {0..n−1} ↠ {0..m−1}."""
    if target_size > source_size or (target_size == 0 and source_size > 0):
        return
    for assignment in product(range(target_size), repeat=source_size):
        if len(set(assignment)) == target_size:
            yield FinSurjection(source_size, target_size, assignment)


# ============================================================================
# PIRÁMIDES
# ============================================================================

def _positions(dimension: int) -> List[Position]:
    return [(i, j) for j in range(dimension + 1) for i in range(j + 1)]


class Pyramid:
    """
    n-símplice de T𝐒.

    Args:
        dimension: n
        sizes: tamaño de cada t_ij
        left: L(i,j) para i < j
        right: R(i,j) para i < j
        validate: comprueba sobreyectividad, conmutatividad y pullbacks
    """

    def __init__(
        self,
        dimension: int,
        sizes: Mapping[Position, int],
        left: Mapping[Position, FinSurjection],
        right: Mapping[Position, FinSurjection],
        validate: bool = True
    ):
        self.dimension = dimension
        self.sizes: Dict[Position, int] = dict(sizes)
        self.left: Dict[Position, FinSurjection] = dict(left)
        self.right: Dict[Position, FinSurjection] = dict(right)
        if validate:
            self.validate()

    # ------------------------------------------------------------------
    # Acceso
    # ------------------------------------------------------------------

    @property
    def positions(self) -> List[Position]:
        return _positions(self.dimension)

    @property
    def apex(self) -> Position:
        return (0, self.dimension)

    def size(self, i: int, j: int) -> int:
        return self.sizes[(i, j)]

    def horizontal(self, i: int) -> FinSurjection:
        """t_ii ↠ t_{i+1,i+1}, inducida por el triángulo sobre t_{i,i+1}."""
        down = self.left[(i, i + 1)]
        across = self.right[(i, i + 1)]
        image = [-1] * down.target_size
        for x in range(down.source_size):
            if image[down(x)] == -1:
                image[down(x)] = across(x)
            elif image[down(x)] != across(x):
                raise PreconditionError(
                    f"El triángulo sobre t{i}{i + 1} no conmuta: la flecha derecha no factoriza por la izquierda"
                )
        return FinSurjection(down.target_size, across.target_size, tuple(image))

    def map_between(self, source: Position, target: Position) -> FinSurjection:
        """
        Composición de flechas t_source ↠ t_target.

        Se admite (i,j) → (i',j') con i ≤ i' ≤ j' ≤ j y, hacia la fila inferior,
        (i,j) → (k,k) con k ≥ j.
        """
        i, j = source
        i2, j2 = target
        current = FinSurjection.identity(self.sizes[source])
        if i2 == j2 and i2 > j:
            current = self.map_between(source, (j, j))
            for k in range(j, i2):
                current = current.then(self.horizontal(k))
            return current
        if not (i <= i2 <= j2 <= j):
            raise PreconditionError(f"No hay flecha de t{i}{j} a t{i2}{j2}")
        for a in range(i, i2):
            current = current.then(self.right[(a, j)])
        for b in range(j, j2, -1):
            current = current.then(self.left[(i2, b)])
        return current

    def projection(self, target: Position) -> FinSurjection:
        """Flecha desde el ápice t_0n hasta t_target."""
        return self.map_between(self.apex, target)

    # ------------------------------------------------------------------
    # Validación
    # ------------------------------------------------------------------

    def validate(self) -> None:
        n = self.dimension
        for position in self.positions:
            if self.sizes.get(position, -1) < 0:
                raise PreconditionError(f"Falta el tamaño de t{position[0]}{position[1]}")
        for i, j in self.positions:
            if i == j:
                continue
            down = self.left.get((i, j))
            across = self.right.get((i, j))
            if down is None or across is None:
                raise PreconditionError(f"Faltan flechas desde t{i}{j}")
            if down.source_size != self.sizes[(i, j)] or down.target_size != self.sizes[(i, j - 1)]:
                raise PreconditionError(f"L({i},{j}) tiene dominio o codominio incorrecto")
            if across.source_size != self.sizes[(i, j)] or across.target_size != self.sizes[(i + 1, j)]:
                raise PreconditionError(f"R({i},{j}) tiene dominio o codominio incorrecto")
        for i in range(n):
            self.horizontal(i)
        for i, j in self.positions:
            if j - i < 2:
                continue
            square = self.elementary_square(i, j)
            if not square.commutes():
                raise PreconditionError(f"El cuadrado con vértice t{i}{j} no conmuta")
            if not square.is_pullback():
                raise PreconditionError(f"El cuadrado con vértice t{i}{j} no es un pullback de conjuntos")

    def elementary_square(self, i: int, j: int) -> "Square":
        """t_ij ↠ t_{i,j−1}, t_ij ↠ t_{i+1,j} sobre t_{i+1,j−1}."""
        return Square(
            apex_to_left=self.left[(i, j)],
            apex_to_right=self.right[(i, j)],
            left_to_base=self.right[(i, j - 1)],
            right_to_base=self.left[(i + 1, j)],
        )

    @property
    def is_connected(self) -> bool:
        n = self.dimension
        return self.sizes[(n, n)] == 1

    # ------------------------------------------------------------------
    # Estructura simplicial
    # ------------------------------------------------------------------

    def face(self, k: int) -> "Pyramid":
        """d_k: elimina todos los conjuntos con índice k."""
        n = self.dimension
        if n < 1 or not 0 <= k <= n:
            raise PreconditionError(f"Cara d{k} no definida en dimensión {n}")

        def delta(a: int) -> int:
            return a if a < k else a + 1

        sizes, left, right = {}, {}, {}
        for a, b in _positions(n - 1):
            sizes[(a, b)] = self.sizes[(delta(a), delta(b))]
            if a < b:
                left[(a, b)] = self.map_between((delta(a), delta(b)), (delta(a), delta(b - 1)))
                right[(a, b)] = self.map_between((delta(a), delta(b)), (delta(a + 1), delta(b)))
        return make_pyramid(n - 1, sizes, left, right, validate=False)

    def degeneracy(self, k: int) -> "Pyramid":
        """s_k: repite la k-ésima diagonal."""
        n = self.dimension
        if not 0 <= k <= n:
            raise PreconditionError(f"Degeneración s{k} no definida en dimensión {n}")

        def sigma(a: int) -> int:
            return a if a <= k else a - 1

        sizes, left, right = {}, {}, {}
        for a, b in _positions(n + 1):
            sizes[(a, b)] = self.sizes[(sigma(a), sigma(b))]
            if a < b:
                if sigma(b - 1) == sigma(b):
                    left[(a, b)] = FinSurjection.identity(sizes[(a, b)])
                else:
                    left[(a, b)] = self.left[(sigma(a), sigma(b))]
                if sigma(a + 1) == sigma(a):
                    right[(a, b)] = FinSurjection.identity(sizes[(a, b)])
                else:
                    right[(a, b)] = self.right[(sigma(a), sigma(b))]
        return make_pyramid(n + 1, sizes, left, right, validate=False)

    # ------------------------------------------------------------------
    # Igualdad estructural
    # ------------------------------------------------------------------

    def _key(self):
        return (
            self.dimension,
            tuple(sorted(self.sizes.items())),
            tuple(sorted(self.left.items())),
            tuple(sorted(self.right.items())),
        )

    def __eq__(self, other) -> bool:
        return isinstance(other, Pyramid) and self._key() == other._key()

    def __hash__(self) -> int:
        return hash(self._key())

    def __repr__(self) -> str:
        sizes = ", ".join(f"t{i}{j}={s}" for (i, j), s in sorted(self.sizes.items()))
        return f"{type(self).__name__}({sizes})"


class T0Cell(Pyramid):
    """Un conjunto finito t_00."""

    @classmethod
    def of_size(cls, m: int) -> "T0Cell":
        return cls(0, {(0, 0): m}, {}, {})


class T1Cell(Pyramid):
    """
    t_00 ↞ t_01 ↠ t_11 con la flecha derecha factorizando por la izquierda.
    """

    @classmethod
    def from_maps(cls, down: FinSurjection, right: FinSurjection) -> "T1Cell":
        if down.source_size != right.source_size:
            raise PreconditionError("down y right deben compartir el conjunto t01")
        return cls(
            1,
            {(0, 0): down.target_size, (0, 1): down.source_size, (1, 1): right.target_size},
            {(0, 1): down},
            {(0, 1): right},
        )

    @property
    def down(self) -> FinSurjection:
        return self.left[(0, 1)]

    @property
    def across(self) -> FinSurjection:
        return self.right[(0, 1)]


class T2Cell(Pyramid):
    """Pirámide t00, t01, t02, t11, t12, t22 con el cuadrado (t02, t01, t12, t11) pullback."""

    def pullback_square(self) -> "Square":
        return self.elementary_square(0, 2)


_CELL_CLASSES = {0: T0Cell, 1: T1Cell, 2: T2Cell}


def make_pyramid(dimension, sizes, left, right, validate: bool = True) -> Pyramid:
    cls = _CELL_CLASSES.get(dimension, Pyramid)
    return cls(dimension, sizes, left, right, validate=validate)


def faces(cell: T2Cell) -> Tuple[T1Cell, T1Cell, T1Cell]:
    """(d₂, d₁, d₀)"""
    return cell.face(2), cell.face(1), cell.face(0)


def degeneracies(cell: T1Cell) -> Tuple[T2Cell, T2Cell]:
    """(s₀, s₁)"""
    return cell.degeneracy(0), cell.degeneracy(1)


# ============================================================================
# CUADRADOS
# ============================================================================

def fiber_product(first: FinSurjection, second: FinSurjection) -> List[Tuple[int, int]]:
    """B ×_A C como lista de pares (b, c) en orden lexicográfico."""
    return [
        (b, c)
        for b in range(first.source_size)
        for c in range(second.source_size)
        if first(b) == second(c)
    ]


@dataclass(frozen=True)
class Square:
    """
    Cuadrado conmutativo de sobreyecciones

        D ──apex_to_right──▶ C
        │                    │
    apex_to_left        right_to_base
        ▼                    ▼
        B ──left_to_base───▶ A
    """
    apex_to_left: FinSurjection
    apex_to_right: FinSurjection
    left_to_base: FinSurjection
    right_to_base: FinSurjection

    def commutes(self) -> bool:
        if (self.apex_to_left.source_size != self.apex_to_right.source_size
                or self.left_to_base.target_size != self.right_to_base.target_size
                or self.apex_to_left.target_size != self.left_to_base.source_size
                or self.apex_to_right.target_size != self.right_to_base.source_size):
            return False
        return self.apex_to_left.then(self.left_to_base) == self.apex_to_right.then(self.right_to_base)

    def fiber_product(self) -> List[Tuple[int, int]]:
        return fiber_product(self.left_to_base, self.right_to_base)

    def is_pullback(self) -> bool:
        comparison = {
            (self.apex_to_left(d), self.apex_to_right(d))
            for d in range(self.apex_to_left.source_size)
        }
        return (
            len(comparison) == self.apex_to_left.source_size
            and len(comparison) == len(self.fiber_product())
        )


def is_pullback_square(
    top: Tuple[FinSurjection, FinSurjection],
    bottom: Tuple[FinSurjection, FinSurjection]
) -> bool:
    """
    Args:
        top: (D ↠ B, D ↠ C)
        bottom: (B ↠ A, C ↠ A)

    Returns:
        True si la comparación D → B ×_A C es biyectiva

    Raises:
        PreconditionError: si el cuadrado no conmuta
    """
    square = Square(top[0], top[1], bottom[0], bottom[1])
    if not square.commutes():
        raise PreconditionError("El cuadrado no conmuta")
    return square.is_pullback()


def identity_square(surjection: FinSurjection) -> Square:
    n, m = surjection.source_size, surjection.target_size
    return Square(FinSurjection.identity(n), surjection, surjection, FinSurjection.identity(m))


def paste_squares(first: Square, second: Square) -> Square:
    """
    Pega dos cuadrados horizontalmente: la arista vertical derecha de first
    (C ↠ A) es la arista vertical izquierda de second.

    Raises:
        PreconditionError: si las aristas verticales no coinciden
    """
    if first.right_to_base != second.apex_to_left:
        raise PreconditionError("Los cuadrados no comparten la arista común")
    return Square(
        apex_to_left=first.apex_to_left,
        apex_to_right=first.apex_to_right.then(second.apex_to_right),
        left_to_base=first.left_to_base.then(second.left_to_base),
        right_to_base=second.right_to_base,
    )


def _sum_maps(first: FinSurjection, second: FinSurjection) -> FinSurjection:
    offset = first.target_size
    return FinSurjection(
        first.source_size + second.source_size,
        first.target_size + second.target_size,
        first.assignment + tuple(y + offset for y in second.assignment),
    )


def square_sum(first: Square, second: Square) -> Square:
    """Unión disjunta vértice a vértice."""
    return Square(
        _sum_maps(first.apex_to_left, second.apex_to_left),
        _sum_maps(first.apex_to_right, second.apex_to_right),
        _sum_maps(first.left_to_base, second.left_to_base),
        _sum_maps(first.right_to_base, second.right_to_base),
    )


def commuting_squares(max_size: int) -> Iterator[Square]:
    """Todos los cuadrados conmutativos de sobreyecciones con conjuntos de tamaño ≤ max_size."""
    sizes = range(max_size + 1)
    for a, b, c in product(sizes, repeat=3):
        for p in surjections(b, a):
            for q in surjections(c, a):
                for d in sizes:
                    for to_left in surjections(d, b):
                        for to_right in surjections(d, c):
                            square = Square(to_left, to_right, p, q)
                            if square.commutes():
                                yield square


# ============================================================================
# ISOMORFISMOS
# ============================================================================

def _signatures(cell: Pyramid) -> List[Tuple[int, ...]]:
    others = [p for p in cell.positions if p != cell.apex]
    projections = [cell.projection(p) for p in others]
    return [tuple(pr(x) for pr in projections) for x in range(cell.size(*cell.apex))]


def _fiber_invariants(signatures: List[Tuple[int, ...]]) -> List[Tuple[int, ...]]:
    if not signatures:
        return []
    width = len(signatures[0])
    counts = [Counter(sig[q] for sig in signatures) for q in range(width)]
    return [tuple(counts[q][sig[q]] for q in range(width)) for sig in signatures]


def iter_isomorphisms(first: Pyramid, second: Pyramid) -> Iterator[Tuple[int, ...]]:
    """
    Enumera los isomorfismos first → second como biyecciones del ápice que
    preservan (en ambos sentidos) los núcleos de todas las proyecciones.

    Un isomorfismo de pirámides queda determinado por su componente en el
    ápice, porque cada t_ij es cociente del ápice.
    """
    if first.dimension != second.dimension or first.sizes != second.sizes:
        return
    sig_a = _signatures(first)
    sig_b = _signatures(second)
    n = len(sig_a)
    inv_a = _fiber_invariants(sig_a)
    inv_b = _fiber_invariants(sig_b)
    if sorted(inv_a) != sorted(inv_b):
        return
    width = len(sig_a[0]) if sig_a else 0
    candidates = [[w for w in range(n) if inv_b[w] == inv_a[x]] for x in range(n)]
    mapping = [-1] * n
    used = [False] * n

    def _compatible(x: int, w: int) -> bool:
        for u in range(x):
            v = mapping[u]
            for q in range(width):
                if (sig_a[x][q] == sig_a[u][q]) != (sig_b[w][q] == sig_b[v][q]):
                    return False
        return True

    def _extend(x: int) -> Iterator[Tuple[int, ...]]:
        if x == n:
            yield tuple(mapping)
            return
        for w in candidates[x]:
            if used[w] or not _compatible(x, w):
                continue
            mapping[x] = w
            used[w] = True
            yield from _extend(x + 1)
            used[w] = False
            mapping[x] = -1

    yield from _extend(0)


def find_isomorphism(first: Pyramid, second: Pyramid) -> Optional[Tuple[int, ...]]:
    return next(iter_isomorphisms(first, second), None)


def are_isomorphic(first: Pyramid, second: Pyramid) -> bool:
    return find_isomorphism(first, second) is not None


def count_isomorphisms(first: Pyramid, second: Pyramid) -> int:
    return sum(1 for _ in iter_isomorphisms(first, second))


def aut_count(cell: Pyramid) -> int:
    """|aut(c)| por búsqueda exhaustiva."""
    return count_isomorphisms(cell, cell)


def boundary_fixing_isomorphisms(first: Pyramid, second: Pyramid) -> int:
    """
    Número de biyecciones del ápice que inducen la identidad en todos los demás
    conjuntos. Para dos completaciones de un mismo borde debe ser exactamente 1.
    """
    if first.dimension != second.dimension or first.sizes != second.sizes:
        return 0
    sig_a = _signatures(first)
    sig_b = _signatures(second)
    by_signature: Dict[Tuple[int, ...], List[int]] = {}
    for w, sig in enumerate(sig_b):
        by_signature.setdefault(sig, []).append(w)
    count = 1
    remaining = Counter(sig_a)
    for sig, multiplicity in remaining.items():
        available = len(by_signature.get(sig, []))
        if available != multiplicity:
            return 0
        count *= factorial(multiplicity)
    return count


# ============================================================================
# CLASES DE T₁ Y CONSTRUCCIONES
# ============================================================================

def t1_class(cell: T1Cell) -> VectorMultiset:
    """
    Multiconjunto {μ_r}_{r ∈ t11}: μ_r es el perfil de fibras de (t01)_r ↠ (t00)_r.
    """
    down, across = cell.down, cell.across
    profiles = []
    for r in range(cell.size(1, 1)):
        fiber_sizes = Counter(down(x) for x in range(down.source_size) if across(x) == r)
        profiles.append(PartitionVector.from_mapping(Counter(fiber_sizes.values())))
    return VectorMultiset.of(profiles)


def cell_from_class(multiset: VectorMultiset) -> T1Cell:
    """Representante canónico de la clase 𝛍 en π₀T₁𝐒."""
    down: List[int] = []
    across: List[int] = []
    base_offset = 0
    for r, mu in enumerate(multiset):
        piece = surjection_from_profile(mu)
        down.extend(base_offset + y for y in piece.assignment)
        across.extend([r] * piece.source_size)
        base_offset += piece.target_size
    return T1Cell.from_maps(
        FinSurjection(len(down), base_offset, tuple(down)),
        FinSurjection(len(across), len(multiset), tuple(across)),
    )


def connected_cell(profile: PartitionVector) -> T1Cell:
    """Celda conexa t00 ↞ t01 ↠ 1 de clase λ."""
    if profile.is_zero:
        raise PreconditionError("Una celda conexa requiere λ no nulo")
    return cell_from_class(VectorMultiset((profile,)))


def nerve_cell(surjection: FinSurjection) -> T1Cell:
    """Nervio de 𝐒 dentro de T𝐒: a ↞ a ↠ b con la flecha izquierda identidad."""
    return T1Cell.from_maps(FinSurjection.identity(surjection.source_size), surjection)


def degenerate_cell(size: int) -> T1Cell:
    """s₀ de un conjunto de tamaño m: identidades m ↞ m ↠ m."""
    return T0Cell.of_size(size).degeneracy(0)


def monoidal_sum(first: Pyramid, second: Pyramid) -> Pyramid:
    """Unión disjunta en cada posición."""
    if first.dimension != second.dimension:
        raise PreconditionError("Solo se suman pirámides de la misma dimensión")
    sizes = {p: first.sizes[p] + second.sizes[p] for p in first.positions}
    left = {p: _sum_maps(first.left[p], second.left[p]) for p in first.left}
    right = {p: _sum_maps(first.right[p], second.right[p]) for p in first.right}
    return make_pyramid(first.dimension, sizes, left, right, validate=False)


# ============================================================================
# SEGAL
# ============================================================================

def segal_glue(left: Pyramid, right: Pyramid) -> Pyramid:
    """
    Pega dos n-símplices que coinciden en d₀(left) = d_n(right) y rellena el
    ápice t_{0,n+1} con el producto fibrado explícito
    t_{0n} ×_{t_{1n}} t_{1,n+1} (pares en orden lexicográfico).

    Raises:
        PreconditionError: si las caras a pegar no coinciden
    """
    n = left.dimension
    if n < 1 or right.dimension != n:
        raise PreconditionError("segal_glue requiere dos n-símplices con n ≥ 1")
    if left.face(0) != right.face(n):
        raise PreconditionError("Las caras a pegar no coinciden (d₀ de la izquierda ≠ d_n de la derecha)")

    sizes: Dict[Position, int] = dict(left.sizes)
    left_maps: Dict[Position, FinSurjection] = dict(left.left)
    right_maps: Dict[Position, FinSurjection] = dict(left.right)
    for (i, j), size in right.sizes.items():
        sizes[(i + 1, j + 1)] = size
    for (i, j), value in right.left.items():
        left_maps[(i + 1, j + 1)] = value
    for (i, j), value in right.right.items():
        right_maps[(i + 1, j + 1)] = value

    pairs = fiber_product(left.right[(0, n)], right.left[(0, n)])
    sizes[(0, n + 1)] = len(pairs)
    left_maps[(0, n + 1)] = FinSurjection(len(pairs), sizes[(0, n)], tuple(a for a, _ in pairs))
    right_maps[(0, n + 1)] = FinSurjection(len(pairs), sizes[(1, n + 1)], tuple(b for _, b in pairs))
    glued = make_pyramid(n + 1, sizes, left_maps, right_maps)
    logger.debug(f"[segal] pegado en dimensión {n + 1}: ápice de {len(pairs)} elementos")
    return glued


def relabel_base(cell: T1Cell, gluing: Sequence[int]) -> T1Cell:
    """
    Reetiqueta t00 de la celda por la biyección inversa de `gluing`
    (gluing: X → t00), de modo que la nueva celda tiene base X.
    """
    bijection = FinSurjection.from_assignment(gluing, cell.size(0, 0))
    if not bijection.is_bijective:
        raise PreconditionError("El pegado debe ser una biyección")
    inverse = bijection.inverse()
    return T1Cell.from_maps(cell.down.then(inverse), cell.across)


def relabel_apex(cell: Pyramid, relabelling: Sequence[int]) -> Pyramid:
    """
    Misma pirámide con el ápice t_{0n} reetiquetado: el nuevo elemento x es el
    antiguo relabelling[x]. El resto de conjuntos y flechas no cambia.

    Raises:
        PreconditionError: si relabelling no es una biyección del ápice
    """
    if cell.dimension < 1:
        raise PreconditionError("Una celda de dimensión 0 no tiene ápice que reetiquetar")
    apex = cell.apex
    bijection = FinSurjection.from_assignment(relabelling, cell.size(*apex))
    if not bijection.is_bijective:
        raise PreconditionError(f"{list(relabelling)} no es una biyección del ápice")
    left = dict(cell.left)
    right = dict(cell.right)
    left[apex] = bijection.then(cell.left[apex])
    right[apex] = bijection.then(cell.right[apex])
    return make_pyramid(cell.dimension, cell.sizes, left, right)


def segal_completion(left: T1Cell, right: T1Cell, gluing: Optional[Sequence[int]] = None) -> T2Cell:
    """
    Rellena el 2-símplice determinado por (left, right).

    Args:
        left: d₂ del resultado
        right: d₀ del resultado
        gluing: biyección opcional t11(left) → t00(right); por defecto la identidad

    Raises:
        PreconditionError: si los conjuntos a pegar tienen distinto tamaño
    """
    if left.size(1, 1) != right.size(0, 0):
        raise PreconditionError(
            f"No se puede pegar: |t11| = {left.size(1, 1)} frente a |t00| = {right.size(0, 0)}"
        )
    if gluing is not None:
        right = relabel_base(right, gluing)
    return segal_glue(left, right)


def segal_decomposition(cell: T2Cell) -> T2Cell:
    """Vuelve a pegar (d₂t, d₀t); el resultado es isomorfo a t."""
    rebuilt = segal_completion(cell.face(2), cell.face(0))
    if not are_isomorphic(rebuilt, cell):
        raise InvariantViolation(f"La completación de Segal de {cell} no es isomorfa al original")
    return rebuilt


def iter_t1_cells(max_apex: int) -> Iterator[T1Cell]:
    """Todas las celdas de T₁𝐒 (no solo representantes) con |t01| ≤ max_apex."""
    for n in range(max_apex + 1):
        for base in range(n + 1):
            for down in surjections(n, base):
                for top in range(base + 1):
                    for horizontal in surjections(base, top):
                        yield T1Cell.from_maps(down, down.then(horizontal))
