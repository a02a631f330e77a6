"""weakram: geradores livres de ideais em extensões fracamente ramificadas."""

__version__ = "0.1.0"
