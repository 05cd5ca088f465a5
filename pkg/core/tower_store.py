# core/tower_store.py
import logging
from pathlib import Path
from typing import List, Union

from pydantic import BaseModel, ConfigDict

from .errors import DegreeOutOfRange, FormatError
from .formats import chain_from_dict, chain_to_dict, parse_model, read_json, write_json
from .natural_splitting import SigmaTower, check_formal_identity
from .sparse import format_fraction

logger = logging.getLogger(__name__)

TOWER_DIR = "tower"
MANIFEST = "manifest.json"


class DegreeEntry(BaseModel):
    model_config = ConfigDict(extra="forbid")

    degree: int
    file: str
    terms: int
    norm: str


class Manifest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    max_degree: int
    degrees: List[DegreeEntry]


class TowerStore:
    def __init__(self, root: Union[str, Path] = TOWER_DIR):
        """A directory holding manifest.json and one chain file w<j>.json per degree."""
        self.root = Path(root)

    @property
    def manifest_path(self) -> Path:
        return self.root / MANIFEST

    def exists(self) -> bool:
        return self.manifest_path.is_file()

    def save(self, tower: SigmaTower) -> Path:
        """Writes every w[j] and then the manifest, so a partial write never looks complete."""
        self.root.mkdir(parents=True, exist_ok=True)
        entries = []
        for j in range(1, tower.max_degree + 1):
            w = tower.chain(j)
            name = f"w{j}.json"
            write_json(self.root / name, chain_to_dict(w))
            entries.append(DegreeEntry(degree=j, file=name, terms=len(w), norm=format_fraction(w.norm())))
        manifest = Manifest(max_degree=tower.max_degree, degrees=entries)
        write_json(self.manifest_path, manifest.model_dump())
        logger.info(f"💾 Saved tower up to degree {tower.max_degree} to {self.root}")
        return self.root

    def load(self, max_degree: Union[int, None] = None) -> SigmaTower:
        """Reads the tower back and re-checks the formal identity of every degree."""
        if not self.exists():
            raise FormatError(f"no tower manifest at {self.manifest_path}")
        manifest = parse_model(Manifest, read_json(self.manifest_path), str(self.manifest_path))
        wanted = manifest.max_degree if max_degree is None else max_degree
        if wanted < 1:
            raise DegreeOutOfRange(f"a tower load needs max degree >= 1, got {wanted}")
        if wanted > manifest.max_degree:
            raise FormatError(
                f"tower at {self.root} holds degrees up to {manifest.max_degree}, {wanted} requested"
            )
        by_degree = {e.degree: e for e in manifest.degrees}
        chains = {}
        for j in range(1, wanted + 1):
            entry = by_degree.get(j)
            if entry is None:
                raise FormatError(f"manifest has no entry for degree {j}")
            w = chain_from_dict(read_json(self.root / entry.file), self.root)
            if w.degree != j + 1 or w.base.size != 2 ** (j + 1):
                raise FormatError(f"{entry.file} is not a degree-{j + 1} chain over 2^[{j + 1}]")
            chains[j] = w
            check_formal_identity(SigmaTower(j, chains), j)
        logger.info(f"✅ Loaded tower up to degree {wanted} from {self.root}; formal identities hold.")
        return SigmaTower(wanted, chains)
