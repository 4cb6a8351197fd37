"""Command-line front end: ``gmle <subcommand> ...``.

Every subcommand prints one JSON document.  Exit status 0 means success,
1 malformed input, 2 a well-formed problem with no answer of the requested
kind (positive-dimensional ideal, infeasible partition).
"""

from __future__ import annotations

import argparse
import csv
import json
import logging
import sys
import time
from contextlib import contextmanager

import numpy as np

from .graphs import GraphError, MixedGraph, OrderingError, PartitionInfeasibleError, partition_lmg
from .groebner import GroebnerBudgetExceeded
from .linalg import symmetric_eigvals
from .mle import HESSIAN_REL_TOL, DomainError, default_pd_tol, is_positive_definite, ml_degree, solver_mle
from .model import EmptyDataError, build_model_ring, sample_covariance
from .score import InputError, score_equations
from .solve import DEDUP_TOL, REAL_TOL, PositiveDimensionalError, zero_dim_solve
from .symbolic import to_mpq

log = logging.getLogger("gmle")


class UsageError(ValueError):
    """Missing or contradictory command-line inputs."""


class _Reporter:
    def __init__(self, verbose: bool):
        self.verbose = verbose

    @contextmanager
    def stage(self, name: str):
        t0 = time.perf_counter()
        yield
        if self.verbose:
            print(f"[gmle] {name}: {time.perf_counter() - t0:.3f} s", file=sys.stderr)


def _read_json(path: str):
    with open(path) as fh:
        return json.load(fh)


def read_graph(path: str) -> MixedGraph:
    data = _read_json(path)
    if not isinstance(data, dict):
        raise GraphError("graph file must hold a JSON object")
    return MixedGraph.from_dict(data)


def read_matrix(path: str) -> list:
    """JSON array of arrays; entries are numbers, decimal strings or "p/q" strings."""
    data = _read_json(path)
    if not isinstance(data, list) or not all(isinstance(r, list) for r in data):
        raise InputError("matrix file must hold a JSON array of arrays")
    try:
        return [[to_mpq(x) for x in row] for row in data]
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise InputError(f"bad matrix entry: {exc}") from None


def read_csv(path: str) -> list:
    rows = []
    with open(path, newline="") as fh:
        for row in csv.reader(fh):
            cells = [c.strip() for c in row if c.strip()]
            if not cells:
                continue
            try:
                rows.append([to_mpq(c) for c in cells])
            except (ValueError, ZeroDivisionError):
                if not rows:
                    continue  # header line
                raise InputError(f"bad data entry in row {len(rows) + 1}") from None
    if len(set(map(len, rows))) > 1:
        raise InputError("data rows have different lengths")
    return rows


def _covariance(args):
    """(matrix, sample_data flag) from --cov or --data."""
    if args.cov and args.data:
        raise UsageError("give either --cov or --data, not both")
    if args.cov:
        return read_matrix(args.cov), False
    if args.data:
        return read_csv(args.data), True
    raise UsageError("this subcommand needs --cov or --data")


def _orientation(args) -> str:
    return "cols" if args.cols_are_samples else "rows"


def cmd_partition(args, rep):
    g = read_graph(args.graph)
    with rep.stage("partition"):
        part = partition_lmg(g)
    return part.to_dict()


def cmd_score_equations(args, rep):
    g = read_graph(args.graph)
    M, sample = _covariance(args)
    ring = build_model_ring(g)
    S = sample_covariance(M, _orientation(args)) if sample else M
    with rep.stage("score equations"):
        sys_ = score_equations(ring, S)
    with rep.stage("dimension and degree"):
        out = sys_.to_dict()
    out["parameters"] = [ring.label(v) for v in ring.variables]
    return out


def cmd_solve(args, rep):
    g = read_graph(args.graph)
    M, sample = _covariance(args)
    ring = build_model_ring(g)
    S = sample_covariance(M, _orientation(args)) if sample else M
    with rep.stage("score equations"):
        sys_ = score_equations(ring, S)
    with rep.stage("solve"):
        sols = zero_dim_solve(sys_.groebner(), seed=args.seed, dedup_tol=args.dedup_tol, real_tol=args.real_tol)
    return {
        "variables": [ring.label(v) for v in ring.variables],
        "degree": sys_.degree(),
        "solutions": [s.to_dict() for s in sols],
    }


def cmd_mle(args, rep):
    g = read_graph(args.graph)
    M, sample = _covariance(args)
    with rep.stage("mle"):
        res = solver_mle(
            g,
            M,
            sample_data=sample,
            samples_in=_orientation(args),
            pd_tol=args.pd_tol,
            real_tol=args.real_tol,
            dedup_tol=args.dedup_tol,
            hessian_tol=args.hessian_tol,
            seed=args.seed,
        )
    if args.verbose:
        for k, v in res.timings.items():
            print(f"[gmle]   {k}: {v:.3f} s", file=sys.stderr)
    return res.to_dict()


def cmd_ml_degree(args, rep):
    g = read_graph(args.graph)
    with rep.stage("ml degree"):
        d = ml_degree(g, seed=args.seed)
    return {"mlDegree": d, "seed": args.seed}


def cmd_check_pd(args, rep):
    M = read_matrix(args.matrix)
    A = np.array([[float(x) for x in r] for r in M])
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise InputError("matrix must be square")
    tol = args.pd_tol if args.pd_tol is not None else default_pd_tol(A)
    ok = is_positive_definite(A, tol)
    w = symmetric_eigvals((A + A.T) / 2) if A.size else np.zeros(0)
    return {"positiveDefinite": ok, "minEigenvalue": float(w[0]) if w.size else None, "tolerance": tol}


COMMANDS = {
    "partition": cmd_partition,
    "score-equations": cmd_score_equations,
    "solve": cmd_solve,
    "mle": cmd_mle,
    "ml-degree": cmd_ml_degree,
    "check-pd": cmd_check_pd,
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="gmle", description="MLE for Gaussian graphical models on loopless mixed graphs")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, graph=True, data=False):
        if graph:
            sp.add_argument("--graph", required=True, help="graph JSON file")
        if data:
            sp.add_argument("--cov", help="covariance matrix JSON (numbers, decimal or p/q strings)")
            sp.add_argument("--data", help="sample data CSV")
            grp = sp.add_mutually_exclusive_group()
            grp.add_argument("--rows-are-samples", action="store_true", default=True)
            grp.add_argument("--cols-are-samples", action="store_true")
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--pd-tol", type=float, default=None, help="default 1e-9 * trace/m")
        sp.add_argument("--real-tol", type=float, default=REAL_TOL)
        sp.add_argument("--dedup-tol", type=float, default=DEDUP_TOL)
        sp.add_argument("--hessian-tol", type=float, default=HESSIAN_REL_TOL, help="relative eigenvalue threshold")
        sp.add_argument("--output", help="write JSON here instead of standard output")
        sp.add_argument("--verbose", action="store_true", help="stage timings on standard error")

    common(sub.add_parser("mle", help="global MLE and classified critical points"), data=True)
    common(sub.add_parser("score-equations", help="saturated score-equation ideal"), data=True)
    common(sub.add_parser("solve", help="all complex critical points"), data=True)
    common(sub.add_parser("ml-degree", help="ML degree from seeded random data"))
    common(sub.add_parser("partition", help="U/W vertex partition"))
    cp = sub.add_parser("check-pd", help="positive-definiteness of a matrix")
    cp.add_argument("--matrix", required=True, help="matrix JSON")
    common(cp, graph=False)
    return p


def _emit(obj, args) -> None:
    text = json.dumps(obj, indent=2) + "\n"
    if getattr(args, "output", None):
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.verbose:
        logging.basicConfig(level=logging.INFO, stream=sys.stderr)
    rep = _Reporter(args.verbose)
    try:
        result = COMMANDS[args.command](args, rep)
    except PositiveDimensionalError as exc:
        _emit({"error": "positive-dimensional", "dim": exc.dim, "degree": exc.degree, "message": str(exc)}, args)
        return 2
    except PartitionInfeasibleError as exc:
        _emit({"error": "partition-infeasible", "vertex": exc.vertex, "message": str(exc)}, args)
        return 2
    except GroebnerBudgetExceeded as exc:
        _emit({"error": "budget-exceeded", "message": str(exc)}, args)
        return 2
    except OrderingError as exc:
        _emit({"error": "ordering", "edge": list(exc.edge) if exc.edge else None, "message": str(exc)}, args)
        return 1
    except (GraphError, InputError, EmptyDataError, DomainError, UsageError) as exc:
        _emit({"error": type(exc).__name__, "message": str(exc)}, args)
        return 1
    except (OSError, json.JSONDecodeError) as exc:
        _emit({"error": "io", "message": str(exc)}, args)
        return 1
    _emit(result, args)
    return 0


if __name__ == "__main__":
    sys.exit(main())
