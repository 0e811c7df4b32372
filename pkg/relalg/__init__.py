"""relalg: composition, group structure and representations of finite word relations."""

__version__ = "0.1.0"
