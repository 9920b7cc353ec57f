"""
Dataset Registry - Real networks of the evaluation with reference values.

Files are looked up in a data directory; nothing is downloaded. Directed
sources are symmetrized on load and self-loops are dropped.
"""
import logging
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

from ..exceptions import DatasetNotFoundError, InvalidArgumentError
from ..graphs import EdgeListOptions, Graph, load_edge_list

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class DatasetSpec:
    """Reference statistics of one network (None where not reported)."""

    name: str
    nodes: int
    mean_degree: float
    p95_degree: int
    efd: int
    tsvd_error: float
    efd_chung_lu: Optional[int]
    efd_erdos_renyi: Optional[int]
    directed: bool = False

    @property
    def file_names(self) -> List[str]:
        """Accepted file names, in lookup order."""
        names = [f"{self.name}.txt", f"{self.name.lower()}.txt"]
        return list(dict.fromkeys(names))

    def reference(self) -> Dict[str, Any]:
        return asdict(self)

    def locate(self, data_dir: Union[str, Path]) -> Path:
        """Path of the dataset file, or DatasetNotFoundError."""
        data_dir = Path(data_dir)
        for file_name in self.file_names:
            candidate = data_dir / file_name
            if candidate.is_file():
                return candidate
        raise DatasetNotFoundError(self.name, str(data_dir / self.file_names[0]))

    def available(self, data_dir: Union[str, Path]) -> bool:
        return any((Path(data_dir) / f).is_file() for f in self.file_names)

    def load(self, data_dir: Union[str, Path]) -> Graph:
        path = self.locate(data_dir)
        graph = load_edge_list(path, EdgeListOptions(symmetrize=True))
        logger.info(
            f"Dataset {self.name}: n={graph.n} (reference {self.nodes}), "
            f"edges={graph.num_edges}"
        )
        return graph


DATASETS: Dict[str, DatasetSpec] = {
    row.name: row
    for row in [
        DatasetSpec("Pubmed", 19581, 4.48, 18, 48, 0.95, 48, 32),
        DatasetSpec("ca-HepPh", 11204, 21.0, 90, 32, 0.63, 96, 64),
        DatasetSpec("p2p-Gnutella04", 10876, 3.68, 32, 32, 0.97, 32, 16, directed=True),
        DatasetSpec("BlogCatalog", 10312, 64.8, 239, 128, 0.71, 160, 128),
        DatasetSpec("Wiki-Vote", 7115, 14.6, 75, 48, 0.77, 80, 48, directed=True),
        DatasetSpec("ca-GrQc", 5242, 5.53, 20, 16, 0.85, 32, 32),
        DatasetSpec("Wikipedia", 4777, 38.7, 99, 64, 0.69, 80, 80),
        DatasetSpec("Facebook", 4039, 43.7, 153, 32, 0.66, 96, 80),
        DatasetSpec("PPI", 3890, 19.7, 72, 48, 0.81, 64, 48),
        DatasetSpec("Citeseer", 3327, 2.74, 8, 16, 0.94, 16, 16, directed=True),
        DatasetSpec("Cora", 2708, 3.90, 9, 16, 0.93, 16, 16, directed=True),
    ]
}


def get_dataset(name: str) -> DatasetSpec:
    """Case-insensitive registry lookup."""
    for key, dataset in DATASETS.items():
        if key.lower() == name.lower():
            return dataset
    raise InvalidArgumentError(
        f"Unknown dataset '{name}'; known: {', '.join(DATASETS)}",
        argument="dataset",
        value=name,
        component="reproduce",
    )
