"""
Diccionario particiones ↔ sobreyecciones.

Cada partición π de E se presenta también como su sobreyección clasificadora
E ↠ S (S = bloques). Para dos particiones π: E ↠ S, τ: E ↠ X se construye el
pushout I (join) y la aplicación φ: E → S ×_I X. Cada predicado se evalúa dos
veces: por la definición a nivel de bloques y por el criterio del diagrama.
"""
from dataclasses import dataclass
from functools import cached_property
from itertools import product
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

import networkx as nx

from core.errors import InvariantViolation, PreconditionError
from core.tconstruction import FinSurjection, T2Cell, fiber_product, make_pyramid


# ============================================================================
# TIPO
# ============================================================================

@dataclass(frozen=True)
class Partition:
    """
    Partición de {0..n−1}; bloques ordenados internamente y por su menor elemento.
    """
    ground_size: int
    blocks: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        seen = [element for block in self.blocks for element in block]
        if any(not block for block in self.blocks):
            raise PreconditionError("Una partición no admite bloques vacíos")
        if sorted(seen) != list(range(self.ground_size)):
            raise PreconditionError(
                f"Los bloques {self.blocks} no particionan {{0..{self.ground_size - 1}}}"
            )

    @classmethod
    def from_blocks(cls, blocks: Sequence[Sequence[int]], ground_size: Optional[int] = None) -> "Partition":
        canonical_blocks = sorted((tuple(sorted(block)) for block in blocks), key=lambda b: b[0] if b else -1)
        if ground_size is None:
            ground_size = sum(len(b) for b in canonical_blocks)
        return cls(ground_size, tuple(canonical_blocks))

    @classmethod
    def from_surjection(cls, surjection: FinSurjection) -> "Partition":
        return cls.from_blocks([list(f) for f in surjection.fibers()], surjection.source_size)

    @classmethod
    def discrete(cls, n: int) -> "Partition":
        """0̂: todos los bloques unitarios."""
        return cls(n, tuple((e,) for e in range(n)))

    @classmethod
    def indiscrete(cls, n: int) -> "Partition":
        """1̂: un único bloque."""
        return cls(n, (tuple(range(n)),) if n else ())

    @cached_property
    def block_of(self) -> Tuple[int, ...]:
        """Índice de bloque de cada elemento."""
        labels = [0] * self.ground_size
        for index, block in enumerate(self.blocks):
            for element in block:
                labels[element] = index
        return tuple(labels)

    def to_surjection(self) -> FinSurjection:
        return FinSurjection(self.ground_size, len(self.blocks), self.block_of)

    def refines(self, other: "Partition") -> bool:
        """π ≤ σ: cada bloque de π está dentro de un bloque de σ."""
        _check_ground(self, other)
        return all(len({other.block_of[e] for e in block}) == 1 for block in self.blocks)

    def __str__(self) -> str:
        return "[" + ",".join("[" + ",".join(str(e) for e in block) + "]" for block in self.blocks) + "]"


def _check_ground(*partitions: Partition) -> None:
    sizes = {p.ground_size for p in partitions}
    if len(sizes) > 1:
        raise PreconditionError(f"Las particiones tienen conjuntos base distintos: tamaños {sorted(sizes)}")


def partitions_from_labels(*block_lists: Sequence[Sequence[int]]) -> Tuple[Partition, ...]:
    """
    Convierte listas de bloques con etiquetas enteras arbitrarias en particiones
    de {0..n−1}, reetiquetando la unión de etiquetas en orden creciente.

    Raises:
        PreconditionError: si las listas no cubren el mismo conjunto base
    """
    grounds = [frozenset(e for block in blocks for e in block) for blocks in block_lists]
    if len(set(grounds)) > 1:
        raise PreconditionError("Las particiones no tienen el mismo conjunto base")
    labels = sorted(grounds[0]) if grounds else []
    index = {label: position for position, label in enumerate(labels)}
    result = []
    for blocks in block_lists:
        flat = [e for block in blocks for e in block]
        if len(flat) != len(set(flat)):
            raise PreconditionError(f"Bloques no disjuntos: {blocks}")
        result.append(Partition.from_blocks([[index[e] for e in block] for block in blocks], len(labels)))
    return tuple(result)


def partition_to_surjection(partition: Partition) -> FinSurjection:
    return partition.to_surjection()


def set_partitions(n: int) -> Iterator[Partition]:
    """Todas las particiones de {0..n−1} (números de Bell)."""
    def _insert(elements: List[int]) -> Iterator[List[List[int]]]:
        if not elements:
            yield []
            return
        first, rest = elements[0], elements[1:]
        for smaller in _insert(rest):
            for position in range(len(smaller)):
                yield smaller[:position] + [[first] + smaller[position]] + smaller[position + 1:]
            yield [[first]] + smaller

    for blocks in _insert(list(range(n))):
        yield Partition.from_blocks(blocks, n)


def coarsenings(partition: Partition) -> Iterator[Partition]:
    """Todas las σ con π ≤ σ: particiones del conjunto de bloques de π."""
    for grouping in set_partitions(len(partition.blocks)):
        yield Partition.from_blocks(
            [[e for b in group for e in partition.blocks[b]] for group in grouping.blocks],
            partition.ground_size,
        )


# ============================================================================
# JOIN Y MEET
# ============================================================================

def join(first: Partition, second: Partition) -> Partition:
    """
    π ∨ τ como objetivo I del pushout: componentes conexas del grafo bipartito
    de solapamiento entre bloques.
    """
    _check_ground(first, second)
    graph = nx.Graph()
    graph.add_nodes_from(("p", i) for i in range(len(first.blocks)))
    graph.add_nodes_from(("t", j) for j in range(len(second.blocks)))
    for e in range(first.ground_size):
        graph.add_edge(("p", first.block_of[e]), ("t", second.block_of[e]))
    blocks = []
    for component in nx.connected_components(graph):
        blocks.append([e for kind, i in component if kind == "p" for e in first.blocks[i]])
    return Partition.from_blocks(blocks, first.ground_size)


def join_blockwise(first: Partition, second: Partition) -> Partition:
    """π ∨ τ por unión-búsqueda sobre los elementos."""
    _check_ground(first, second)
    parent = list(range(first.ground_size))

    def _find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for partition in (first, second):
        for block in partition.blocks:
            for element in block[1:]:
                a, b = _find(block[0]), _find(element)
                if a != b:
                    parent[max(a, b)] = min(a, b)
    groups: Dict[int, List[int]] = {}
    for e in range(first.ground_size):
        groups.setdefault(_find(e), []).append(e)
    return Partition.from_blocks(list(groups.values()), first.ground_size)


def meet(first: Partition, second: Partition) -> Partition:
    """π ∧ τ: intersecciones no vacías de bloques."""
    _check_ground(first, second)
    blocks = []
    for a in first.blocks:
        for b in second.blocks:
            common = set(a) & set(b)
            if common:
                blocks.append(sorted(common))
    return Partition.from_blocks(blocks, first.ground_size)


@dataclass(frozen=True)
class PhiMap:
    """
    φ: E → S ×_I X, e ↦ (π(e), τ(e)).

    Attributes:
        images: imagen de cada elemento de E
        codomain: el producto fibrado S ×_I X en orden lexicográfico
        join_size: |I|
    """
    images: Tuple[Tuple[int, int], ...]
    codomain: Tuple[Tuple[int, int], ...]
    join_size: int

    @property
    def image(self) -> Tuple[Tuple[int, int], ...]:
        return tuple(sorted(set(self.images)))

    @property
    def is_injective(self) -> bool:
        return len(set(self.images)) == len(self.images)

    @property
    def is_surjective(self) -> bool:
        return set(self.images) == set(self.codomain)

    def image_partition(self, ground_size: int) -> Partition:
        """Factorización por la imagen: los bloques son las fibras de φ."""
        fibers: Dict[Tuple[int, int], List[int]] = {}
        for e, value in enumerate(self.images):
            fibers.setdefault(value, []).append(e)
        return Partition.from_blocks(list(fibers.values()), ground_size)


def _join_map(partition: Partition, joined: Partition) -> FinSurjection:
    """S ↠ I: cada bloque de π va al bloque de π ∨ τ que lo contiene."""
    return FinSurjection(
        len(partition.blocks),
        len(joined.blocks),
        tuple(joined.block_of[block[0]] for block in partition.blocks),
    )


def phi_map(first: Partition, second: Partition) -> PhiMap:
    _check_ground(first, second)
    joined = join(first, second)
    to_join_first = _join_map(first, joined)
    to_join_second = _join_map(second, joined)
    return PhiMap(
        images=tuple((first.block_of[e], second.block_of[e]) for e in range(first.ground_size)),
        codomain=tuple(fiber_product(to_join_first, to_join_second)),
        join_size=len(joined.blocks),
    )


def meet_by_phi(first: Partition, second: Partition) -> Partition:
    return phi_map(first, second).image_partition(first.ground_size)


# ============================================================================
# PREDICADOS
# ============================================================================

def commute_blockwise(first: Partition, second: Partition) -> bool:
    """
    Si el bloque de π de p corta al bloque de τ de q, entonces el bloque de τ
    de p corta al bloque de π de q.
    """
    _check_ground(first, second)
    meets = {(first.block_of[r], second.block_of[r]) for r in range(first.ground_size)}
    for p, q in product(range(first.ground_size), repeat=2):
        if (first.block_of[p], second.block_of[q]) in meets:
            if (first.block_of[q], second.block_of[p]) not in meets:
                return False
    return True


def independent_blockwise(first: Partition, second: Partition) -> bool:
    """Cada bloque de π corta a cada bloque de τ."""
    _check_ground(first, second)
    meets = {(first.block_of[r], second.block_of[r]) for r in range(first.ground_size)}
    return len(meets) == len(first.blocks) * len(second.blocks)


def commute(first: Partition, second: Partition) -> bool:
    """
    π y τ conmutan. Se evalúa por bloques y por sobreyectividad de φ.

    Raises:
        InvariantViolation: si las dos evaluaciones difieren
    """
    by_blocks = commute_blockwise(first, second)
    by_diagram = phi_map(first, second).is_surjective
    if by_blocks != by_diagram:
        raise InvariantViolation(f"commute({first}, {second}): bloques={by_blocks}, φ={by_diagram}")
    return by_blocks


def independent(first: Partition, second: Partition) -> bool:
    """
    π y τ son independientes: por bloques y por φ sobreyectiva con |I| ≤ 1.

    Sobre E = ∅ el join no tiene bloques y el par vacío es independiente.
    """
    by_blocks = independent_blockwise(first, second)
    phi = phi_map(first, second)
    by_diagram = phi.is_surjective and phi.join_size <= 1
    if by_blocks != by_diagram:
        raise InvariantViolation(f"independent({first}, {second}): bloques={by_blocks}, φ={by_diagram}")
    return by_blocks


def is_transversal_blockwise(sigma: Partition, first: Partition, second: Partition) -> bool:
    """π ≤ σ, π ∧ τ = 0̂, π y τ conmutan, π ∨ τ = σ ∨ τ."""
    _check_ground(sigma, first, second)
    return (
        first.refines(sigma)
        and meet(first, second) == Partition.discrete(first.ground_size)
        and commute_blockwise(first, second)
        and join_blockwise(first, second) == join_blockwise(sigma, second)
    )


def _factor_through(target: FinSurjection, via: FinSurjection) -> Optional[FinSurjection]:
    """g con g ∘ via = target si existe (via y target comparten dominio)."""
    image = [-1] * via.target_size
    for x in range(via.source_size):
        if image[via(x)] == -1:
            image[via(x)] = target(x)
        elif image[via(x)] != target(x):
            return None
    return FinSurjection(via.target_size, target.target_size, tuple(image))


def is_transversal_diagram(sigma: Partition, first: Partition, second: Partition) -> bool:
    """
    Criterio por sobreyecciones: φ biyectiva (el cuadrado es pullback), σ
    factoriza por π mediante g: S ↠ B y existe h: B ↠ I con h ∘ g = (S ↠ I).
    """
    _check_ground(sigma, first, second)
    phi = phi_map(first, second)
    if not (phi.is_injective and phi.is_surjective):
        return False
    pi = first.to_surjection()
    g = _factor_through(sigma.to_surjection(), pi)
    if g is None:
        return False
    to_join = _join_map(first, join(first, second))
    return _factor_through(to_join, g) is not None


def is_transversal(sigma: Partition, first: Partition, second: Partition) -> bool:
    """
    (π, τ) es una transversal de σ. Ambos criterios deben coincidir.

    Raises:
        PreconditionError: si los conjuntos base difieren
        InvariantViolation: si los dos criterios discrepan
    """
    by_blocks = is_transversal_blockwise(sigma, first, second)
    by_diagram = is_transversal_diagram(sigma, first, second)
    if by_blocks != by_diagram:
        raise InvariantViolation(
            f"is_transversal({sigma}, {first}, {second}): bloques={by_blocks}, diagrama={by_diagram}"
        )
    return by_blocks


# ============================================================================
# TRANSVERSALES ↔ T₂𝐒 CONEXO
# ============================================================================

def transversal_cell(sigma: Partition, first: Partition, second: Partition) -> T2Cell:
    """
    La celda conexa de T₂𝐒 asociada a una transversal:

        t02 = E, t01 = S (bloques de π), t12 = X (bloques de τ),
        t00 = B (bloques de σ), t11 = I (π ∨ τ), t22 = 1.

    Raises:
        PreconditionError: si (π, τ) no es una transversal de σ
    """
    if not is_transversal(sigma, first, second):
        raise PreconditionError(f"({first}, {second}) no es una transversal de {sigma}")
    n = first.ground_size
    joined = join(first, second)
    pi = first.to_surjection()
    g = _factor_through(sigma.to_surjection(), pi)
    sizes = {
        (0, 0): len(sigma.blocks), (0, 1): len(first.blocks), (0, 2): n,
        (1, 1): len(joined.blocks), (1, 2): len(second.blocks), (2, 2): 1 if n else 0,
    }
    left = {(0, 1): g, (0, 2): pi, (1, 2): _join_map(second, joined)}
    right = {
        (0, 1): _join_map(first, joined),
        (0, 2): second.to_surjection(),
        (1, 2): FinSurjection(len(second.blocks), sizes[(2, 2)], (0,) * len(second.blocks)),
    }
    return make_pyramid(2, sizes, left, right)


def cell_transversal(cell: T2Cell) -> Tuple[Partition, Partition, Partition]:
    """
    (σ, π, τ) sobre E = t02: núcleos de t02 ↠ t00, t02 ↠ t01 y t02 ↠ t12.

    Raises:
        PreconditionError: si la celda no es conexa
    """
    if not cell.is_connected:
        raise PreconditionError("Solo las celdas conexas de T₂𝐒 son transversales")
    return (
        Partition.from_surjection(cell.projection((0, 0))),
        Partition.from_surjection(cell.projection((0, 1))),
        Partition.from_surjection(cell.projection((1, 2))),
    )
