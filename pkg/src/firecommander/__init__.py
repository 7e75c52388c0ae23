"""FireCommander: a deterministic multi-agent wildfire response simulation."""

__version__ = "0.1.0"
