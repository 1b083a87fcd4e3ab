"""Command-line interface.

Subcommands: params, keygen, encrypt, decrypt, attack, reduce, experiment,
baseline.  Errors exit nonzero with a machine-readable JSON object on
stderr.  The GRNTRU_OUTPUT_DIR environment variable sets the default output
directory for relative paths.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from pathlib import Path

from .attack import naive_attack, pullback_attack
from .errors import GrntruError
from .group_ring import element
from .harness import (
    compare_cyclic_baseline,
    default_output_dir,
    derive_params,
    parse_config_file,
    run_experiment,
    summarize,
    trial_seed,
    write_records_csv,
    write_summary_dat,
)
from .lattice import read_basis_text, write_basis_text
from .ntru import (
    Ciphertext,
    NtruParams,
    ciphertext_from_dict,
    ciphertext_to_dict,
    decrypt,
    encrypt,
    keygen,
    keypair_from_dict,
    keypair_to_dict,
    sample_ternary,
)
from .reduction import ReductionConfig, reduce_basis


def _out_path(raw: str) -> Path:
    path = Path(raw)
    return path if path.is_absolute() else default_output_dir() / path


def _reduction_config(args) -> ReductionConfig:
    return ReductionConfig(
        algorithm=args.algo.upper(),
        delta=args.delta,
        eta=args.eta,
        beta=args.beta,
        max_tours=args.max_tours,
        float_prepass=not args.no_prepass,
    )


def _add_reducer_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--algo", default="LLL", choices=["LLL", "BKZ", "lll", "bkz"])
    parser.add_argument("--delta", type=float, default=0.99)
    parser.add_argument("--eta", type=float, default=0.501)
    parser.add_argument("--beta", type=int, default=10)
    parser.add_argument("--max-tours", type=int, default=8)
    parser.add_argument("--no-prepass", action="store_true")


def _load_key(path: str):
    data = json.loads(Path(path).read_text(encoding="utf-8"))
    return keypair_from_dict(data)


def cmd_params(args) -> int:
    params = derive_params(args.N)
    print(json.dumps(params.to_dict()))
    return 0


def cmd_keygen(args) -> int:
    params = derive_params(args.N)
    rng = random.Random(args.seed)
    kp = keygen(params, rng)
    payload = keypair_to_dict(kp, params)
    out = _out_path(args.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(json.dumps(payload), encoding="utf-8")
    print(f"wrote key pair to {out}")
    return 0


def cmd_encrypt(args) -> int:
    kp, params = _load_key(args.key)
    msg_data = json.loads(Path(args.message).read_text(encoding="utf-8"))
    m = element(params.group, msg_data["m"])
    rng = random.Random(args.seed)
    r = element(params.group, sample_ternary(params.d, params.d, params.n, rng))
    ct = encrypt(kp.h, m, r, params)
    out = _out_path(args.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(json.dumps(ciphertext_to_dict(ct)), encoding="utf-8")
    print(f"wrote ciphertext to {out}")
    return 0


def cmd_decrypt(args) -> int:
    kp, params = _load_key(args.key)
    data = json.loads(Path(args.ciphertext).read_text(encoding="utf-8"))
    ct = ciphertext_from_dict(data, params)
    m = decrypt(kp, ct, params)
    print(json.dumps({"m": m.to_list()}))
    return 0


def cmd_attack(args) -> int:
    kp, params = _load_key(args.key)
    cfg = _reduction_config(args)
    if args.kind == "naive":
        outcome = naive_attack(kp.h, params, args.threshold, cfg)
    else:
        outcome = pullback_attack(kp.h, params, args.threshold, cfg)
    print(json.dumps(outcome.to_dict()))
    return 0 if not outcome.failure else 1


def cmd_reduce(args) -> int:
    rows = read_basis_text(args.input)
    cfg = _reduction_config(args)
    reduced = reduce_basis(rows, cfg)
    out = _out_path(args.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    write_basis_text(reduced.rows, out)
    print(f"wrote reduced basis to {out}")
    return 0


def cmd_experiment(args) -> int:
    cfg = parse_config_file(args.config)
    records, summaries = run_experiment(cfg)
    if cfg.output_path is not None:
        print(f"wrote {len(records)} records to {cfg.output_path}")
        dat_path = Path(cfg.output_path).with_suffix(".dat")
        write_summary_dat(summaries, dat_path)
        print(f"wrote summary table to {dat_path}")
    for entry in summaries:
        print(json.dumps(entry))
    return 0


def cmd_baseline(args) -> int:
    cfg = ReductionConfig(
        algorithm=args.algo.upper(),
        delta=args.delta,
        eta=args.eta,
        beta=args.beta,
        max_tours=args.max_tours,
        float_prepass=not args.no_prepass,
    )
    out = _out_path(args.out) if args.out else None
    rows = compare_cyclic_baseline(
        args.N, args.trials, cfg, master_seed=args.seed, output_path=out
    )
    for row in rows:
        print(json.dumps(row))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="grntru",
        description="Group-ring NTRU over dihedral groups and its lattice attacks",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("params", help="derive experiment parameters for N")
    p.add_argument("--N", type=int, required=True)
    p.set_defaults(func=cmd_params)

    p = sub.add_parser("keygen", help="generate a key pair")
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--out", default="key.json")
    p.set_defaults(func=cmd_keygen)

    p = sub.add_parser("encrypt", help="encrypt a message file")
    p.add_argument("--key", required=True)
    p.add_argument("--message", required=True, help='JSON file {"m": [...]}')
    p.add_argument("--seed", type=int, default=1, help="seed for the blinding vector")
    p.add_argument("--out", default="ciphertext.json")
    p.set_defaults(func=cmd_encrypt)

    p = sub.add_parser("decrypt", help="decrypt a ciphertext file")
    p.add_argument("--key", required=True)
    p.add_argument("--ciphertext", required=True)
    p.set_defaults(func=cmd_decrypt)

    p = sub.add_parser("attack", help="run a key-recovery attack on a key file")
    p.add_argument("kind", choices=["naive", "pullback"])
    p.add_argument("--key", required=True)
    p.add_argument("--threshold", type=float, default=None)
    _add_reducer_flags(p)
    p.set_defaults(func=cmd_attack)

    p = sub.add_parser("reduce", help="reduce a plain-text basis file")
    p.add_argument("--input", required=True)
    p.add_argument("--out", default="reduced.txt")
    _add_reducer_flags(p)
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("experiment", help="run a campaign from a config file")
    p.add_argument("--config", required=True)
    p.set_defaults(func=cmd_experiment)

    p = sub.add_parser("baseline", help="cyclic-vs-dihedral comparison at one N")
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--trials", type=int, default=20)
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--out", default=None)
    _add_reducer_flags(p)
    p.set_defaults(func=cmd_baseline)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except GrntruError as exc:
        print(
            json.dumps({"error": type(exc).__name__, "message": str(exc)}),
            file=sys.stderr,
        )
        return 2
    except (OSError, json.JSONDecodeError, KeyError, ValueError) as exc:
        print(
            json.dumps({"error": type(exc).__name__, "message": str(exc)}),
            file=sys.stderr,
        )
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
