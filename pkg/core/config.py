# core/config.py
import os
import logging
from dataclasses import dataclass
from pathlib import Path

from dotenv import load_dotenv

from .errors import ResourceLimit

load_dotenv()

logger = logging.getLogger(__name__)

DEFAULT_MAX_ELEMENTS = 64
DEFAULT_MAX_DIM = 2_000_000
DEFAULT_JMAX = 2
DEFAULT_NMAX = 3
DEFAULT_SEED = 0
DEFAULT_WORKERS = 3
DEFAULT_LOG_DIR = "logs"


def _env_int(name: str, default: int) -> int:
    raw = os.getenv(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        return int(raw)
    except ValueError:
        logger.warning(f"⚠️ Ignoring non-integer {name}={raw!r}; using {default}.")
        return default


@dataclass(frozen=True)
class Caps:
    """Resource caps. Operations that could grow past them fail fast."""

    max_elements: int = DEFAULT_MAX_ELEMENTS
    max_dim: int = DEFAULT_MAX_DIM

    @classmethod
    def from_env(cls) -> "Caps":
        return cls(
            max_elements=_env_int("HOCHLAT_CAP_ELEMENTS", DEFAULT_MAX_ELEMENTS),
            max_dim=_env_int("HOCHLAT_CAP_DIM", DEFAULT_MAX_DIM),
        )

    def check_elements(self, size: int, what: str = "table") -> None:
        if size > self.max_elements:
            raise ResourceLimit(what, size, self.max_elements)

    def check_dim(self, size: int, what: str = "chain space") -> None:
        if size > self.max_dim:
            raise ResourceLimit(what, size, self.max_dim)


def resolve_caps(caps: "Caps | None") -> Caps:
    return caps if caps is not None else Caps.from_env()


def default_jmax() -> int:
    return _env_int("HOCHLAT_JMAX", DEFAULT_JMAX)


def default_nmax() -> int:
    return _env_int("HOCHLAT_NMAX", DEFAULT_NMAX)


def default_seed() -> int:
    return _env_int("HOCHLAT_SEED", DEFAULT_SEED)


def default_workers() -> int:
    return max(1, _env_int("HOCHLAT_WORKERS", DEFAULT_WORKERS))


def default_log_dir() -> Path:
    return Path(os.getenv("HOCHLAT_LOG_DIR") or DEFAULT_LOG_DIR)
