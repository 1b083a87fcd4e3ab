"""Experiment campaigns: derive parameters, run attacks in bulk, write CSV.

Per trial the harness generates a key pair and a random encryption, runs the
configured attacks, re-verifies every returned key end to end (lattice
membership plus decryption of that trial's ciphertext), and records one CSV
row per (N, trial, attack).  Trial seeds derive deterministically from the
master seed, so a campaign is reproducible bit for bit except for timings.
"""

from __future__ import annotations

import csv
import hashlib
import io
import os
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple

from .attack import decrypts_ciphertext, key_norm, naive_attack, pullback_attack
from .errors import ParameterError
from .group_ring import GroupSpec, element
from .lattice import LatticeVectorPair, in_full_lattice
from .ntru import NtruParams, encrypt, keygen, sample_message, sample_ternary
from .reduction import ReductionConfig

CSV_COLUMNS = [
    "group",
    "N",
    "p",
    "q",
    "d",
    "trial",
    "seed",
    "attack",
    "reducer",
    "success_k",
    "success_k1",
    "success_k2",
    "norm_key",
    "norm_k1",
    "time_s",
]

ENV_OUTPUT_DIR = "GRNTRU_OUTPUT_DIR"


def default_output_dir() -> Path:
    return Path(os.environ.get(ENV_OUTPUT_DIR, "."))


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def _least_power_of_two_above(bound: int) -> int:
    q = 2
    while q <= bound:
        q *= 2
    return q


def derive_params(N: int) -> NtruParams:
    """Dihedral experiment parameters: p=3, d=floor(2N/3), least valid q."""
    if N < 3:
        raise ParameterError(f"N={N} must be at least 3")
    p = 3
    d = (2 * N) // 3
    q = _least_power_of_two_above((6 * d + 1) * p)
    return NtruParams(N=N, p=p, q=q, d=d, group=GroupSpec.dihedral(N))


def derive_cyclic_params(n: int) -> NtruParams:
    """Cyclic baseline parameters over a group of order n: d=floor(n/3)."""
    if n < 4:
        raise ParameterError(f"n={n} must be at least 4")
    p = 3
    d = n // 3
    q = _least_power_of_two_above((6 * d + 1) * p)
    return NtruParams(N=n, p=p, q=q, d=d, group=GroupSpec.cyclic(n))


def trial_seed(master_seed: int, group_label: str, N: int, trial: int) -> int:
    """Stable 64-bit per-trial seed, independent of execution order."""
    text = f"{master_seed}:{group_label}:{N}:{trial}"
    return int.from_bytes(hashlib.sha256(text.encode()).digest()[:8], "big")


@dataclass(frozen=True)
class ExperimentConfig:
    """Campaign description.

    ``attack`` is one of naive, pullback, both.  Threshold multipliers scale
    the private-key norm sqrt(4d+1); the defaults match the attack
    defaults (4x naive, 2x pull-back).
    """

    n_values: Tuple[int, ...]
    trials: int = 20
    attack: str = "pullback"
    reducer: ReductionConfig = field(default_factory=ReductionConfig)
    naive_multiplier: float = 4.0
    pullback_multiplier: float = 2.0
    master_seed: int = 1
    output_path: Optional[Path] = None
    workers: int = 1

    def __post_init__(self):
        if self.trials < 1:
            raise ParameterError(f"trials={self.trials} must be at least 1")
        if self.attack not in ("naive", "pullback", "both"):
            raise ParameterError(f"unknown attack {self.attack!r}")
        for n in self.n_values:
            if n == 2 or not _is_prime(n):
                raise ParameterError(f"N={n} must be an odd prime")
        if self.workers < 1:
            raise ParameterError("workers must be at least 1")

    def attacks(self) -> Tuple[str, ...]:
        return ("naive", "pullback") if self.attack == "both" else (self.attack,)


@dataclass
class TrialRecord:
    """One CSV row: the outcome of a single attack on a single trial."""

    group: str
    N: int
    p: int
    q: int
    d: int
    trial: int
    seed: int
    attack: str
    reducer: str
    success_k: Optional[bool]
    success_k1: Optional[bool]
    success_k2: Optional[bool]
    norm_key: float
    norm_k1: Optional[float]
    time_s: float

    def csv_row(self) -> List[str]:
        def flag(v: Optional[bool]) -> str:
            return "" if v is None else str(int(v))

        def num(v: Optional[float]) -> str:
            return "" if v is None else f"{v:.6f}"

        return [
            self.group,
            str(self.N),
            str(self.p),
            str(self.q),
            str(self.d),
            str(self.trial),
            str(self.seed),
            self.attack,
            self.reducer,
            flag(self.success_k),
            flag(self.success_k1),
            flag(self.success_k2),
            num(self.norm_key),
            num(self.norm_k1),
            num(self.time_s),
        ]


def _group_label(params: NtruParams) -> str:
    prefix = "D" if params.group.kind == "dihedral" else "C"
    return f"{prefix}{params.group.size}"


def _verified_key(
    vec: Optional[List[int]], h, ct, message, params: NtruParams
) -> bool:
    """Membership in the lattice of h plus decryption of this ciphertext."""
    if vec is None:
        return False
    half = len(vec) // 2
    pair = LatticeVectorPair(tuple(vec[:half]), tuple(vec[half:]))
    if not in_full_lattice(pair, h, params.q):
        return False
    return decrypts_ciphertext(vec[:half], h, ct, message, params)


def run_single_trial(
    params: NtruParams,
    trial: int,
    seed: int,
    attacks: Sequence[str],
    reducer: ReductionConfig,
    naive_multiplier: float = 4.0,
    pullback_multiplier: float = 2.0,
) -> List[TrialRecord]:
    """Generate one instance, run the requested attacks, verify the keys."""
    rng = random.Random(seed)
    kp = keygen(params, rng)
    message = sample_message(params, rng)
    blind = element(params.group, sample_ternary(params.d, params.d, params.n, rng))
    ct = encrypt(kp.h, message, blind, params)
    norm_key = key_norm(params)
    records = []
    for kind in attacks:
        if kind == "naive":
            threshold = (
                None if naive_multiplier == 4.0 else naive_multiplier * norm_key
            )
            outcome = naive_attack(kp.h, params, threshold, reducer)
            ok = outcome.success.get("k", False) and _verified_key(
                outcome.k, kp.h, ct, message, params
            )
            records.append(
                TrialRecord(
                    group=_group_label(params),
                    N=params.N,
                    p=params.p,
                    q=params.q,
                    d=params.d,
                    trial=trial,
                    seed=seed,
                    attack="naive",
                    reducer=reducer.label(),
                    success_k=ok,
                    success_k1=None,
                    success_k2=None,
                    norm_key=norm_key,
                    norm_k1=None,
                    time_s=outcome.elapsed_s,
                )
            )
        else:
            threshold = (
                None
                if pullback_multiplier == 2.0
                else pullback_multiplier * norm_key
            )
            outcome = pullback_attack(kp.h, params, threshold, reducer)
            ok1 = outcome.success.get("k1", False) and _verified_key(
                outcome.k1, kp.h, ct, message, params
            )
            ok2 = outcome.success.get("k2", False) and _verified_key(
                outcome.k2, kp.h, ct, message, params
            )
            norm_k1 = (
                outcome.norm_sq_k1 ** 0.5 if outcome.norm_sq_k1 is not None else None
            )
            records.append(
                TrialRecord(
                    group=_group_label(params),
                    N=params.N,
                    p=params.p,
                    q=params.q,
                    d=params.d,
                    trial=trial,
                    seed=seed,
                    attack="pullback",
                    reducer=reducer.label(),
                    success_k=None,
                    success_k1=ok1,
                    success_k2=ok2,
                    norm_key=norm_key,
                    norm_k1=norm_k1,
                    time_s=outcome.elapsed_s,
                )
            )
    return records


def _failure_records(
    params: NtruParams,
    trial: int,
    seed: int,
    attacks: Sequence[str],
    reducer: ReductionConfig,
) -> List[TrialRecord]:
    rows = []
    for kind in attacks:
        naive = kind == "naive"
        rows.append(
            TrialRecord(
                group=_group_label(params),
                N=params.N,
                p=params.p,
                q=params.q,
                d=params.d,
                trial=trial,
                seed=seed,
                attack=kind,
                reducer=reducer.label(),
                success_k=False if naive else None,
                success_k1=None if naive else False,
                success_k2=None if naive else False,
                norm_key=key_norm(params),
                norm_k1=None,
                time_s=0.0,
            )
        )
    return rows


def _trial_task(args) -> List[TrialRecord]:
    # A failed trial is recorded as unsuccessful; it never aborts the campaign.
    try:
        return run_single_trial(*args)
    except Exception:
        params, trial, seed, attacks, reducer = args[:5]
        return _failure_records(params, trial, seed, attacks, reducer)


def run_experiment(cfg: ExperimentConfig) -> Tuple[List[TrialRecord], List[Dict]]:
    """Run the full campaign; returns (records, per-(N, attack) summaries)."""
    tasks = []
    for n in cfg.n_values:
        params = derive_params(n)
        label = _group_label(params)
        for trial in range(cfg.trials):
            seed = trial_seed(cfg.master_seed, label, n, trial)
            tasks.append(
                (
                    params,
                    trial,
                    seed,
                    cfg.attacks(),
                    cfg.reducer,
                    cfg.naive_multiplier,
                    cfg.pullback_multiplier,
                )
            )
    if cfg.workers > 1:
        with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
            nested = list(pool.map(_trial_task, tasks))
    else:
        nested = [_trial_task(t) for t in tasks]
    records = [rec for batch in nested for rec in batch]
    records.sort(key=lambda r: (r.N, r.trial, r.attack))
    if cfg.output_path is not None:
        write_records_csv(records, cfg.output_path)
    return records, summarize(records)


def summarize(records: Sequence[TrialRecord]) -> List[Dict]:
    """Aggregate success rates and means per (group, N, attack, reducer)."""
    groups: Dict[tuple, List[TrialRecord]] = {}
    for rec in records:
        groups.setdefault((rec.group, rec.N, rec.attack, rec.reducer), []).append(rec)
    out = []
    for (group, n, attack, reducer), recs in sorted(groups.items()):
        count = len(recs)
        entry: Dict = {
            "group": group,
            "N": n,
            "attack": attack,
            "reducer": reducer,
            "trials": count,
            "norm_key": recs[0].norm_key,
            "mean_time_s": sum(r.time_s for r in recs) / count,
        }
        if attack == "naive":
            entry["success_k_pct"] = 100.0 * sum(bool(r.success_k) for r in recs) / count
        else:
            entry["success_k1_pct"] = (
                100.0 * sum(bool(r.success_k1) for r in recs) / count
            )
            entry["success_k2_pct"] = (
                100.0 * sum(bool(r.success_k2) for r in recs) / count
            )
            norms = [r.norm_k1 for r in recs if r.norm_k1 is not None]
            entry["mean_norm_k1"] = sum(norms) / len(norms) if norms else None
        out.append(entry)
    return out


def records_csv_text(records: Sequence[TrialRecord]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for rec in records:
        writer.writerow(rec.csv_row())
    return buf.getvalue()


def write_records_csv(records: Sequence[TrialRecord], path) -> None:
    Path(path).parent.mkdir(parents=True, exist_ok=True)
    Path(path).write_text(records_csv_text(records), encoding="utf-8")


def write_summary_dat(summaries: Sequence[Dict], path) -> None:
    """Gnuplot-friendly whitespace table with a # header line."""
    keys = ["group", "N", "attack", "reducer", "trials"]
    extra = sorted({k for s in summaries for k in s} - set(keys))
    cols = keys + extra
    lines = ["# " + " ".join(cols)]
    for s in summaries:
        vals = []
        for k in cols:
            v = s.get(k)
            if v is None:
                vals.append("nan")
            elif isinstance(v, float):
                vals.append(f"{v:.6f}")
            else:
                vals.append(str(v))
        lines.append(" ".join(vals))
    Path(path).parent.mkdir(parents=True, exist_ok=True)
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def compare_cyclic_baseline(
    N: int,
    trials: int,
    reducer: Optional[ReductionConfig] = None,
    master_seed: int = 1,
    output_path: Optional[Path] = None,
) -> List[Dict]:
    """Naive attack on a cyclic group of order N vs pull-back on D_N.

    Both attacks reduce 2N-dimensional lattices, which is the point of the
    comparison.  Returns one summary row per group.
    """
    reducer = reducer or ReductionConfig()
    rows: List[Dict] = []
    for params, attack_kind in (
        (derive_cyclic_params(N), "naive"),
        (derive_params(N), "pullback"),
    ):
        label = _group_label(params)
        records: List[TrialRecord] = []
        for trial in range(trials):
            seed = trial_seed(master_seed, label, N, trial)
            records.extend(
                run_single_trial(params, trial, seed, (attack_kind,), reducer)
            )
        summary = summarize(records)[0]
        success_key = "success_k_pct" if attack_kind == "naive" else "success_k1_pct"
        # Both attacks work in 2N dimensions: the cyclic group of order N
        # yields a 2N-dim lattice, the dihedral pull-back two 2N-dim ones.
        rows.append(
            {
                "group": label,
                "N": N,
                "lattice_dim": 2 * N,
                "attack": attack_kind,
                "reducer": reducer.label(),
                "trials": trials,
                "success_pct": summary[success_key],
                "mean_time_s": summary["mean_time_s"],
            }
        )
    if output_path is not None:
        Path(output_path).parent.mkdir(parents=True, exist_ok=True)
        with open(output_path, "w", newline="", encoding="utf-8") as fh:
            writer = csv.DictWriter(fh, fieldnames=list(rows[0].keys()))
            writer.writeheader()
            for row in rows:
                writer.writerow(row)
    return rows


def parse_config_file(path) -> ExperimentConfig:
    """Key = value format, one per line; # starts a comment.

    Recognized keys: N (comma-separated), trials, attack, algo, delta, eta,
    beta, max_tours, prepass, seed, output, workers, threshold_naive,
    threshold_pullback.
    """
    raw: Dict[str, str] = {}
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ParameterError(f"malformed config line: {line!r}")
        key, value = line.split("=", 1)
        raw[key.strip()] = value.strip()
    if "N" not in raw:
        raise ParameterError("config must set N")
    n_values = tuple(int(tok) for tok in raw["N"].replace(",", " ").split())
    reducer = ReductionConfig(
        algorithm=raw.get("algo", "LLL").upper(),
        delta=float(raw.get("delta", "0.99")),
        eta=float(raw.get("eta", "0.501")),
        beta=int(raw.get("beta", "10")),
        max_tours=int(raw.get("max_tours", "8")),
        float_prepass=raw.get("prepass", "true").lower() in ("1", "true", "yes"),
    )
    output = raw.get("output")
    return ExperimentConfig(
        n_values=n_values,
        trials=int(raw.get("trials", "20")),
        attack=raw.get("attack", "pullback"),
        reducer=reducer,
        naive_multiplier=float(raw.get("threshold_naive", "4.0")),
        pullback_multiplier=float(raw.get("threshold_pullback", "2.0")),
        master_seed=int(raw.get("seed", "1")),
        output_path=default_output_dir() / output if output else None,
        workers=int(raw.get("workers", "1")),
    )
