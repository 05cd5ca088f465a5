# core/suite.py
"""
End-to-end acceptance run: builds a deterministic corpus of tables and
morphisms, pushes every instance through an asyncio queue of workers (each
instance computed in a thread) and collects the results in corpus order.
"""

import asyncio
import logging
import random
import sys
from asyncio import Queue
from dataclasses import dataclass
from typing import Any, Callable, Dict, List, Optional, Sequence

from tqdm import tqdm

from .chains import regular_bimodule
from .config import Caps, default_workers, resolve_caps
from .errors import HochlatError
from .homology import cohomology_dims, dense_rank, homology_dims, unitisation_check
from .natural_splitting import (
    SigmaTower,
    build_tower,
    sigma_operator_norm,
    substitution_tuples,
    verify_inductive_hypothesis,
    verify_naturality,
    verify_splitting,
)
from .reports import InstanceResult, SuiteReport
from .semilattice import (
    Morphism,
    SemigroupTable,
    chain_semilattice,
    collapse_morphism,
    enumerate_commutative_semigroups,
    enumerate_unital_semilattices,
    free_unital_semilattice,
    null_monoid,
    relabel,
    substitution_morphism,
    threshold_morphism,
)

logger = logging.getLogger(__name__)

CONTROL_NOTE = "control: nonzero H_1 detected"
UNITISATION_MAX_SIZE = 3
UNITISATION_MAX_DEGREE = 2
RANDOM_MORPHISMS = 4


@dataclass(frozen=True)
class Instance:
    name: str
    kind: str
    payload: Any


class SuiteRunner:
    """Runs homology, splitting and naturality checks over a seeded corpus."""

    def __init__(
        self,
        sizes: Sequence[int] = (1, 2, 3),
        jmax: int = 2,
        nmax: int = 3,
        seed: int = 0,
        named: bool = True,
        workers: Optional[int] = None,
        caps: Optional[Caps] = None,
        tower: Optional[SigmaTower] = None,
        progress: bool = True,
    ):
        self.sizes = sorted(set(sizes))
        self.jmax = jmax
        self.nmax = nmax
        self.seed = seed
        self.named = named
        self.workers = workers or default_workers()
        self.caps = resolve_caps(caps)
        self.tower = tower
        self.progress = progress

    # --- Corpus ---------------------------------------------------------------

    def corpus(self) -> List[Instance]:
        rng = random.Random(self.seed)
        instances: List[Instance] = []
        unital: List[SemigroupTable] = []
        for size in self.sizes:
            for idx, table in enumerate(enumerate_unital_semilattices(size)):
                unital.append(table)
                instances.append(Instance(f"usl{size}-{idx}", "semilattice", table))
        if self.named:
            named = [("free-2", free_unital_semilattice(2, self.caps))]
            named += [(f"chain-{n}", chain_semilattice(n, self.caps)) for n in range(1, 6)]
            for name, table in named:
                unital.append(table)
                instances.append(Instance(name, "semilattice", table))
            instances.append(Instance("null-monoid", "control", null_monoid()))
        for size in self.sizes:
            if size > UNITISATION_MAX_SIZE:
                continue
            for idx, table in enumerate(enumerate_commutative_semigroups(size)):
                if table.unit is None:
                    instances.append(Instance(f"unitize{size}-{idx}", "unitisation", table))
        if self.named:
            for idx, theta in enumerate(self._morphisms(rng, unital)):
                instances.append(Instance(f"morphism-{idx}", "naturality", theta))
        logger.info(f"Corpus: {len(instances)} instances (seed={self.seed}).")
        return instances

    def _morphisms(self, rng: random.Random, unital: List[SemigroupTable]) -> List[Morphism]:
        out: List[Morphism] = [collapse_morphism(2)]
        for n in (3, 4, 5):
            out.append(threshold_morphism(chain_semilattice(n), rng.randrange(1, n)))
        for j in range(2, self.jmax + 1):
            free = free_unital_semilattice(j + 1, self.caps)
            out.extend(substitution_morphism(free, x, self.caps) for x in substitution_tuples(j))
        pool = [t for t in unital if t.size > 1]
        for _ in range(RANDOM_MORPHISMS):
            table = pool[rng.randrange(len(pool))]
            x = tuple(rng.randrange(table.size) for _ in range(2))
            out.append(substitution_morphism(table, x, self.caps))
        for n in (3, 4):
            perm = list(range(n))
            rng.shuffle(perm)
            out.append(relabel(chain_semilattice(n), perm)[1])
        perm = [0, 2, 1, 3]
        out.append(relabel(free_unital_semilattice(2), perm)[1])
        return out

    # --- Per-instance checks --------------------------------------------------

    def _degrees(self) -> range:
        return range(1, self.jmax + 1)

    def _check_semilattice(self, table: SemigroupTable) -> InstanceResult:
        homology = homology_dims(table, self.nmax, "A", self.caps)
        dense = homology_dims(table, self.nmax, "A", self.caps, rank_fn=dense_rank)
        cohomology = cohomology_dims(table, self.nmax, "Adual", self.caps)
        splitting = verify_splitting(self.tower, table, self._degrees())
        hypothesis = verify_inductive_hypothesis(self.tower, table, self._degrees())
        norms = [sigma_operator_norm(self.tower, table, j) for j in self._degrees()]
        detail = {
            "table": table.describe(),
            "homology": homology.dims(),
            "dense_oracle": dense.dims(),
            "cohomology": cohomology.dims(),
            "duality": homology.dims() == cohomology.dims(),
            "splitting": splitting.to_dict()["degrees"],
            "inductive_hypothesis": hypothesis.passed,
            "sigma_norms": {str(r.degree): r.exact_norm for r in norms},
        }
        passed = (
            homology.vanishing
            and homology.dims() == dense.dims()
            and cohomology.vanishing
            and detail["duality"]
            and splitting.passed
            and hypothesis.passed
            and all(r.within_bound for r in norms)
        )
        return InstanceResult(name="", kind="semilattice", passed=passed, detail=detail)

    def _check_control(self, table: SemigroupTable) -> InstanceResult:
        nmax = min(self.nmax, 2)
        sparse = homology_dims(table, nmax, "A", self.caps)
        dense = homology_dims(table, nmax, "A", self.caps, rank_fn=dense_rank)
        cohomology = cohomology_dims(table, nmax, "Adual", self.caps)
        detected = bool(sparse.dims()) and sparse.dims()[0] >= 1
        agree = sparse.dims() == dense.dims() == cohomology.dims()
        detail = {
            "table": table.describe(),
            "homology": sparse.dims(),
            "dense_oracle": dense.dims(),
            "cohomology": cohomology.dims(),
        }
        if detected:
            detail["note"] = CONTROL_NOTE
        return InstanceResult(
            name="", kind="control", passed=detected and agree, control=True, detail=detail
        )

    def _check_unitisation(self, table: SemigroupTable) -> InstanceResult:
        nmax = min(self.nmax, UNITISATION_MAX_DEGREE)
        module = regular_bimodule(table)
        report = unitisation_check(table, module, nmax, self.caps)
        dense = unitisation_check(table, module, nmax, self.caps, rank_fn=dense_rank)
        detail = {
            "table": table.describe(),
            "before": report.left,
            "after": report.right,
            "dense_oracle": {"before": dense.left, "after": dense.right},
        }
        passed = report.passed and dense.passed and report.left == dense.left
        return InstanceResult(name="", kind="unitisation", passed=passed, detail=detail)

    def _check_naturality(self, theta: Morphism) -> InstanceResult:
        report = verify_naturality(self.tower, theta, self._degrees())
        detail = {
            "source": theta.source.describe(),
            "target": theta.target.describe(),
            "map": list(theta.map),
            "degrees": report.to_dict()["degrees"],
        }
        return InstanceResult(name="", kind="naturality", passed=report.passed, detail=detail)

    def run_instance(self, instance: Instance) -> InstanceResult:
        checks: Dict[str, Callable[[Any], InstanceResult]] = {
            "semilattice": self._check_semilattice,
            "control": self._check_control,
            "unitisation": self._check_unitisation,
            "naturality": self._check_naturality,
        }
        try:
            result = checks[instance.kind](instance.payload)
        except Exception as e:
            logger.error(f"❌ {instance.name} raised {type(e).__name__}: {e}")
            result = InstanceResult(
                name="", kind=instance.kind, passed=False,
                detail={"type": "error", "error": type(e).__name__, "message": str(e)},
            )
        result = result.model_copy(update={"name": instance.name})
        if result.passed:
            logger.debug(f"✅ {instance.name} passed.")
        else:
            logger.warning(f"⚠️ {instance.name} failed: {result.detail}")
        return result

    # --- Orchestration --------------------------------------------------------

    async def _worker(self, name: str, queue: Queue, results: list, bar) -> None:
        while True:
            item = await queue.get()
            if item is None:
                break
            idx, instance = item
            results[idx] = await asyncio.to_thread(self.run_instance, instance)
            logger.debug(f"[{name}] finished {instance.name}")
            bar.update(1)
            queue.task_done()

    async def run_async(self) -> SuiteReport:
        logger.info(f"🚀 Starting suite: sizes={self.sizes}, jmax={self.jmax}, nmax={self.nmax}.")
        if self.tower is None:
            self.tower = build_tower(self.jmax, self.caps)
        elif self.tower.max_degree < self.jmax:
            raise HochlatError(
                f"tower reaches degree {self.tower.max_degree}, suite needs {self.jmax}"
            )
        instances = self.corpus()
        results: List[Optional[InstanceResult]] = [None] * len(instances)

        queue: Queue = Queue()
        for item in enumerate(instances):
            await queue.put(item)

        disable = not self.progress or not sys.stderr.isatty()
        with tqdm(total=len(instances), desc="suite", file=sys.stderr, disable=disable) as bar:
            workers = [
                asyncio.create_task(self._worker(f"Worker-{w + 1}", queue, results, bar))
                for w in range(self.workers)
            ]
            await queue.join()
            for _ in range(self.workers):
                await queue.put(None)
            await asyncio.gather(*workers)

        report = SuiteReport(
            seed=self.seed, sizes=self.sizes, jmax=self.jmax, nmax=self.nmax, instances=results
        )
        summary = report.summary()
        logger.info(
            f"✅ Suite finished: {summary['passed']}/{summary['instances']} passed."
            if report.passed
            else f"❌ Suite finished with {summary['failed']} failure(s)."
        )
        for note in summary["controls"]:
            logger.info(note)
        return report

    def run(self) -> SuiteReport:
        return asyncio.run(self.run_async())
