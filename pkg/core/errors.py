"""
Jerarquía de excepciones del motor y su código de salida en la CLI.

    0  éxito
    2  error de formato o de parseo
    3  violación de precondición
    4  fallo de un invariante interno
"""


class PlethysmError(Exception):
    """Error base del motor. Sin subclase concreta se trata como fallo interno."""

    exit_code = 4


class FormatError(PlethysmError, ValueError):
    """Entrada mal formada: JSON inválido, fracción decimal, codificación de λ inválida."""

    exit_code = 2


class PreconditionError(PlethysmError, ValueError):
    """La entrada está bien formada pero viola la precondición de la operación."""

    exit_code = 3


class InvariantViolation(PlethysmError):
    """Un chequeo cruzado interno no se cumplió."""

    exit_code = 4
