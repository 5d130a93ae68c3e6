"""Numerical verification of a Shimura-lift identity between an orthogonal
and a unitary theta series attached to an indefinite quaternion algebra."""

from .config import InstanceConfig, Tolerances, load_config
from .errors import ShimliftError, InvalidInstance
from .instance import FieldInstance, worked_instance

__all__ = ["FieldInstance", "InstanceConfig", "Tolerances", "load_config", "worked_instance", "ShimliftError", "InvalidInstance"]
