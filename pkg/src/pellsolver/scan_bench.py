"""
Range scans, solution tables, maxima bookkeeping and the standard-versus-fast
benchmark.
"""
import json
import logging
import platform
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from datetime import datetime
from math import isqrt
from pathlib import Path
from typing import Any, Dict, Iterable, Iterator, List, Optional, Tuple

import numpy as np
import pandas as pd
import sympy

from .arith import is_square
from .cf_engine import solve_fast, solve_standard
from .config import SolverConfig
from .errors import (
    IncompleteInterval,
    MismatchDetected,
    NotRepresentable,
    StepBudgetExceeded,
    Unclassifiable,
    UsageError,
)
from .form_reduction import reduce_to_distinctive, solve_from_representation
from .models import (
    BenchReport,
    MaximaClass,
    MaximaKind,
    MaximaRecord,
    MethodTotals,
    PellSolution,
    ShortcutKind,
    TableRecord,
)

try:
    from tqdm import tqdm
    TQDM_AVAILABLE = True
except ImportError:
    TQDM_AVAILABLE = False
    tqdm = None

try:
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
    MATPLOTLIB_AVAILABLE = True
except ImportError:
    MATPLOTLIB_AVAILABLE = False
    plt = None

logger = logging.getLogger(__name__)

METHODS = ("fast", "standard", "seqdiff", "repr")


def solve_by_method(radicand: int, method: str = "fast",
                    config: Optional[SolverConfig] = None) -> PellSolution:
    """Minimal solution by the named method.

    seqdiff and repr fall back to the fast path when the reduction finds no
    distinctive form; the method tag then reads FALLBACK_<fast tag>.
    """
    if method == "fast":
        return solve_fast(radicand, config)
    if method == "standard":
        return solve_standard(radicand, config)
    if method in ("seqdiff", "repr"):
        try:
            if method == "seqdiff":
                return reduce_to_distinctive(radicand, config).solution
            return solve_from_representation(radicand, config=config).solution
        except (Unclassifiable, NotRepresentable, StepBudgetExceeded) as e:
            logger.info(f"A={radicand}: {method} fell back to the fast path ({e})")
            fast = solve_fast(radicand, config)
            return fast.with_method(f"FALLBACK_{fast.method}")
    raise UsageError(f"unknown method '{method}', expected one of {', '.join(METHODS)}")


def _check_range(a_lo: int, a_hi: int) -> None:
    if a_lo < 2 or a_hi < a_lo:
        raise UsageError(f"empty or invalid range [{a_lo}, {a_hi}]")


def _solve_block(block: Tuple[int, int, str, Dict[str, Any]]) -> List[Dict[str, str]]:
    """Worker entry point: one contiguous block, records as dicts."""
    lo, hi, method, config_data = block
    config = SolverConfig.from_dict(config_data)
    records = []
    for radicand in range(lo, hi + 1):
        if is_square(radicand):
            continue
        solution = solve_by_method(radicand, method, config)
        records.append(TableRecord(solution.A, solution.x, solution.y, solution.method).to_dict())
    return records


def _blocks(a_lo: int, a_hi: int, size: int) -> List[Tuple[int, int]]:
    return [(lo, min(lo + size - 1, a_hi)) for lo in range(a_lo, a_hi + 1, size)]


def build_table(a_lo: int, a_hi: int, method: str = "fast",
                config: Optional[SolverConfig] = None) -> Iterator[TableRecord]:
    """One record per non-square A in [a_lo, a_hi], in ascending order.

    With config.workers > 1 the range is split into contiguous blocks that
    run in a process pool; results are merged in block order.
    """
    config = config or SolverConfig()
    _check_range(a_lo, a_hi)
    if method not in METHODS:
        raise UsageError(f"unknown method '{method}', expected one of {', '.join(METHODS)}")
    blocks = [(lo, hi, method, config.to_dict()) for lo, hi in _blocks(a_lo, a_hi, config.block_size)]
    show = config.progress and TQDM_AVAILABLE and len(blocks) > 1

    if config.workers > 1 and len(blocks) > 1:
        with ProcessPoolExecutor(max_workers=config.workers) as executor:
            results = executor.map(_solve_block, blocks)
            if show:
                results = tqdm(results, total=len(blocks), desc="scan", unit="block")
            for chunk in results:
                for data in chunk:
                    yield TableRecord.from_dict(data)
        return

    iterable = tqdm(blocks, desc="scan", unit="block") if show else blocks
    for block in iterable:
        for data in _solve_block(block):
            yield TableRecord.from_dict(data)


def write_table_jsonl(records: Iterable[TableRecord], path: Path, append: bool = False) -> int:
    """Write records as JSON lines; returns the number written."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    count = 0
    with open(path, 'a' if append else 'w', encoding='utf-8') as f:
        for record in records:
            f.write(json.dumps(record.to_dict(), separators=(',', ':')) + "\n")
            count += 1
    logger.info(f"Wrote {count} records to {path}")
    return count


def read_table_jsonl(path: Path) -> Iterator[TableRecord]:
    with open(path, 'r', encoding='utf-8') as f:
        for line in f:
            line = line.strip()
            if line:
                yield TableRecord.from_dict(json.loads(line))


def table_frame(records: Iterable[TableRecord]) -> pd.DataFrame:
    """Records as a DataFrame; x and y stay decimal strings."""
    return pd.DataFrame([record.to_dict() for record in records], columns=['A', 'x', 'y', 'method'])


def export_tsv(records: Iterable[TableRecord], path: Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    table_frame(records).to_csv(path, sep='\t', index=False)
    logger.info(f"Exported table to {path}")
    return path


def classify_maximum(radicand: int) -> MaximaClass:
    if sympy.isprime(radicand):
        return MaximaClass.PRIME_4N1 if radicand % 4 == 1 else MaximaClass.PRIME
    if radicand % 2 == 0 and sympy.isprime(radicand // 2):
        return MaximaClass.QUASIPRIME
    return MaximaClass.OTHER


def find_maxima(records: Iterable[TableRecord], strict: bool = True,
                prior_max: Optional[int] = None) -> List[MaximaRecord]:
    """Local maxima per interval (k^2, (k+1)^2) and running absolute maxima.

    Records must be in ascending A. With strict=True a range that cuts an
    interval raises IncompleteInterval; otherwise cut intervals get no local
    maximum. Absolute maxima need every x below the first A: they are
    reported for a table starting at A = 2, or from prior_max, the largest
    x over all A below the table.
    """
    rows = [(record.A, record.x) for record in records]
    if not rows:
        return []
    first, last = rows[0][0], rows[-1][0]
    found: List[MaximaRecord] = []

    if first == 2 or prior_max is not None:
        best = -1 if prior_max is None else prior_max
        for radicand, x in rows:
            if x > best:
                best = x
                found.append(MaximaRecord(radicand, x, isqrt(radicand), MaximaKind.ABSOLUTE,
                                          classify_maximum(radicand)))
    else:
        logger.info(f"Table starts at A={first}: no absolute maxima without a prior maximum")

    intervals: Dict[int, List[Tuple[int, int]]] = {}
    for radicand, x in rows:
        intervals.setdefault(isqrt(radicand), []).append((radicand, x))
    for k, members in sorted(intervals.items()):
        complete = first <= k * k + 1 and last >= (k + 1) ** 2 - 1
        if not complete:
            if strict:
                raise IncompleteInterval(k, first, last)
            continue
        ordered = sorted(members, key=lambda item: item[1], reverse=True)
        if len(ordered) > 1 and ordered[0][1] == ordered[1][1]:
            continue
        radicand, x = ordered[0]
        found.append(MaximaRecord(radicand, x, k, MaximaKind.LOCAL, classify_maximum(radicand)))

    found.sort(key=lambda record: (record.A, record.kind.value))
    return found


def maxima_summary(maxima: Iterable[MaximaRecord]) -> Dict[str, Dict[str, int]]:
    """How many maxima of each kind fall in each classification."""
    summary: Dict[str, Dict[str, int]] = {kind.value: {} for kind in MaximaKind}
    for record in maxima:
        bucket = summary[record.kind.value]
        bucket[record.classification.value] = bucket.get(record.classification.value, 0) + 1
    return summary


def _environment() -> Dict[str, str]:
    return {
        'python': sys.version.split()[0],
        'platform': platform.platform(),
        'numpy': np.__version__,
        'sympy': sympy.__version__,
        'pandas': pd.__version__,
    }


def bench(a_lo: int, a_hi: int, config: Optional[SolverConfig] = None,
          track_maxima: bool = False, with_seqdiff: bool = False) -> BenchReport:
    """Run the standard and fast solvers over a range and compare them.

    Raises:
        MismatchDetected: the two methods disagree for some A
    """
    config = config or SolverConfig()
    _check_range(a_lo, a_hi)
    standard, fast = MethodTotals(), MethodTotals()
    std_steps: List[int] = []
    fast_steps: List[int] = []
    prime_pairs: List[Tuple[int, int]] = []
    records: List[TableRecord] = []
    unclassifiable = 0 if with_seqdiff else None
    over_budget = 0 if with_seqdiff else None

    values = [a for a in range(a_lo, a_hi + 1) if not is_square(a)]
    iterable = tqdm(values, desc="bench", unit="A") if config.progress and TQDM_AVAILABLE else values
    for radicand in iterable:
        start = time.perf_counter()
        reference = solve_standard(radicand, config)
        standard.wall_time += time.perf_counter() - start

        start = time.perf_counter()
        result = solve_fast(radicand, config)
        fast.wall_time += time.perf_counter() - start

        if (result.x, result.y) != (reference.x, reference.y):
            raise MismatchDetected(radicand, (reference.x, reference.y), (result.x, result.y))

        std_steps.append(reference.steps)
        fast_steps.append(result.steps)
        fast.hits[result.method] = fast.hits.get(result.method, 0) + 1
        if result.method == "STANDARD":
            fast.fallbacks += 1
        elif result.method == ShortcutKind.EQUAL_R.value and radicand % 4 == 1 and sympy.isprime(radicand):
            prime_pairs.append((result.steps, reference.steps))
        if track_maxima:
            records.append(TableRecord(radicand, result.x, result.y, result.method))
        if with_seqdiff:
            try:
                reduce_to_distinctive(radicand, config)
            except Unclassifiable:
                unclassifiable += 1
            except StepBudgetExceeded as e:
                logger.warning(f"A={radicand}: {e}")
                over_budget += 1

    standard.steps, fast.steps = int(np.sum(std_steps)), int(np.sum(fast_steps))
    standard.hits = {"STANDARD": len(values)}
    prime_ratio = None
    if prime_pairs:
        pairs = np.array(prime_pairs, dtype=float)
        prime_ratio = float(pairs[:, 0].mean() / pairs[:, 1].mean())

    report = BenchReport(
        a_lo=a_lo,
        a_hi=a_hi,
        count=len(values),
        standard=standard,
        fast=fast,
        speedup=standard.wall_time / fast.wall_time if fast.wall_time > 0 else float('inf'),
        step_ratio=fast.steps / standard.steps if standard.steps else 0.0,
        prime_4n1_step_ratio=prime_ratio,
        mismatches=0,
        unclassifiable=unclassifiable,
        over_budget=over_budget,
        maxima=find_maxima(records, strict=False) if track_maxima else [],
        environment=_environment(),
    )
    logger.info(f"Bench [{a_lo}, {a_hi}]: {report.count} values, step ratio {report.step_ratio:.3f}, "
                f"speedup {report.speedup:.3f}")
    return report


def save_report(report: BenchReport, path: Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, 'w', encoding='utf-8') as f:
        json.dump(report.to_dict(), f, indent=2)
    logger.info(f"Saved bench report to {path}")
    return path


def summary_table(report: BenchReport) -> pd.DataFrame:
    """Per-method totals as a small DataFrame."""
    rows = []
    for name, totals in (('standard', report.standard), ('fast', report.fast)):
        rows.append({
            'method': name,
            'wall_time_s': round(totals.wall_time, 6),
            'cf_steps': totals.steps,
            'fallbacks': totals.fallbacks,
            'mean_steps': totals.steps / report.count if report.count else 0.0,
        })
    return pd.DataFrame(rows).set_index('method')


def hits_table(report: BenchReport) -> pd.DataFrame:
    """Shortcut-hit histogram of the fast pass."""
    frame = pd.DataFrame(sorted(report.fast.hits.items()), columns=['method', 'hits'])
    return frame.set_index('method')


def plot_maxima(records: Iterable[TableRecord], maxima: Iterable[MaximaRecord], path: Path) -> Optional[Path]:
    """Log-scale x against A with the maxima marked; None without matplotlib."""
    if not MATPLOTLIB_AVAILABLE:
        logger.warning("matplotlib not available, skipping maxima plot")
        return None
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    frame = table_frame(records)
    fig, ax = plt.subplots(figsize=(10, 5))
    ax.scatter(frame['A'], frame['x'].map(lambda value: float(int(value))), s=2, color='0.6', label='x(A)')
    for kind, marker, colour in ((MaximaKind.LOCAL, 'o', 'tab:blue'), (MaximaKind.ABSOLUTE, '*', 'tab:red')):
        chosen = [record for record in maxima if record.kind is kind]
        if chosen:
            ax.scatter([record.A for record in chosen], [float(record.x) for record in chosen],
                       marker=marker, color=colour, label=f"{kind.value} maxima")
    ax.set_yscale('log')
    ax.set_xlabel('A')
    ax.set_ylabel('minimal x')
    ax.legend()
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
    logger.info(f"Saved maxima plot to {path}")
    return path


def default_table_path(config: SolverConfig, a_lo: int, a_hi: int) -> Path:
    timestamp = datetime.now().strftime('%Y%m%d_%H%M%S')
    return config.output_dir / "tables" / f"table_{a_lo}_{a_hi}_{timestamp}.jsonl"
