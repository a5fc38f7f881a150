"""
Registro centralizado de suites de verificación.

Cada entrada describe una suite: nombre visible, qué comprueba y qué cota
de config.cfg ([Verification] o [Engine]) limita su tamaño. La implementación
de cada suite vive en verification_suites.py.
"""
from typing import Any, Dict, List, Optional


# ============================================================================
# REGISTRO DE SUITES
# ============================================================================

SUITE_REGISTRY: Dict[str, Dict[str, Any]] = {
    "duality": {
        "suite_key": "duality",
        "display_name": "Dualidad Δ / pletismo",
        "description": "⟨Δ(A_σ), F⊗G⟩ = A_σ(G⊛F) sobre pares de series aleatorias con semilla",
        "bound_setting": "duality_pairs",
    },
    "green": {
        "suite_key": "green",
        "display_name": "Función de Green",
        "description": "Δ(A) = Σ_k A^k ⊗ a_k truncada y cardinalidad homotópica de la inclusión de sobreyecciones",
        "bound_setting": "truncation",
    },
    "objective": {
        "suite_key": "objective",
        "display_name": "Comultiplicación objetiva",
        "description": "Conteo de biyecciones en T𝐒 frente a delta_generator",
        "bound_setting": "objective_weight",
    },
    "partitions": {
        "suite_key": "partitions",
        "display_name": "Diccionario de particiones",
        "description": "join/meet/commute/independent/transversal por bloques y por diagramas",
        "bound_setting": "partition_ground_size",
    },
    "simplicial": {
        "suite_key": "simplicial",
        "display_name": "Estructura simplicial y Segal",
        "description": "Identidades simpliciales, pullbacks, completación de Segal y suma de cuadrados",
        "bound_setting": "size_bound",
    },
    "classical": {
        "suite_key": "classical",
        "display_name": "Especialización clásica",
        "description": "Faà di Bruno multinomial y polinomios de Bell",
        "bound_setting": "classical_max_n",
    },
    "consistency": {
        "suite_key": "consistency",
        "display_name": "Consistencia interna",
        "description": "Tuplas frente a multiconjuntos, counidad y coasociatividad",
        "bound_setting": "consistency_weight",
    },
    "automorphisms": {
        "suite_key": "automorphisms",
        "display_name": "Factores de simetría",
        "description": "|aut| por fuerza bruta frente a autiv de la clase",
        "bound_setting": "automorphism_size",
    },
}


# ============================================================================
# FUNCIONES DE LOOKUP
# ============================================================================

def find_suite_by_name(suite_name: str) -> Optional[Dict[str, Any]]:
    """
    Busca una suite por clave, sin distinguir mayúsculas.

    Args:
        suite_name: Nombre de la suite (e.g., "duality", "Objective")

    Returns:
        Copia de la configuración de la suite, o None si no existe
    """
    if not suite_name:
        return None
    config = SUITE_REGISTRY.get(suite_name.strip().lower())
    return config.copy() if config else None


def get_supported_suites() -> List[str]:
    """Claves de todas las suites registradas, en orden de registro."""
    return list(SUITE_REGISTRY.keys())
