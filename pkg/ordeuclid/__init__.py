"""Transfinitely valued Euclidean domains with exact ordinal norms."""

__version__ = "0.1.0"

from .eucworld import Ring as Ring
from .eucworld import RingConfig as RingConfig
from .factoring import Factorizer as Factorizer
from .fields import FieldConfig as FieldConfig
from .motzkin import RingModel as RingModel
from .motzkin import stratify as stratify
from .ordinals import Ordinal as Ordinal
from .ordinals import nat_sum as nat_sum
from .ordinals import parse as parse_ordinal
from .parsing import parse_element as parse_element
from .routing import CommandRouter as CommandRouter
from .routing import Message as Message
