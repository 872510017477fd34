"""
Excepciones del laboratorio.
"""


class LabError(Exception):
    """Base de todos los errores propios."""


class ConfigError(LabError, ValueError):
    """Escenario o fichero de configuración inválido."""


class NumericalInstabilityError(LabError, ArithmeticError):
    """La suma alternada se salió de [0, 1] más allá de la tolerancia."""


class NotUnimodalWarning(UserWarning):
    """El objetivo no se comportó como quasi-cóncavo durante la búsqueda."""
