"""Command-line entry point: ``motional-qubit --mode fig2 --output fig2.csv``."""
from __future__ import annotations

import contextlib
import sys

from .config import (EXIT_INTEGRITY, EXIT_NOT_CONVERGED, ConfigError, parse_config)
from .errors import ConvergenceError, NumericalIntegrityError
from .runner import converge, dump_matrices, run_sweep, write_convergence, write_csv


@contextlib.contextmanager
def _open_output(path):
    if path in ("-", ""):
        yield sys.stdout
    else:
        with open(path, "w", newline="") as fh:
            yield fh


def main(argv=None) -> int:
    try:
        cfg = parse_config(sys.argv[1:] if argv is None else argv)
    except ConfigError as err:
        print(f"motional-qubit: {err}", file=sys.stderr)
        return err.exit_code

    try:
        if cfg.mode == "dump":
            with _open_output(cfg.output) as out:
                dump_matrices(cfg, out)
            return 0
        if cfg.mode == "converge":
            try:
                results = converge(cfg)
                code = 0
            except ConvergenceError as err:
                results, code = err.results, EXIT_NOT_CONVERGED
                print(f"motional-qubit: {err}", file=sys.stderr)
            with _open_output(cfg.output) as out:
                write_convergence(results, cfg, out)
            return code
        results = run_sweep(cfg)
        with _open_output(cfg.output) as out:
            write_csv(results, cfg, out)
        unsettled = sum(int((~r.converged).sum()) for r in results)
        if unsettled:
            print(f"motional-qubit: {unsettled} point(s) not converged in n_max",
                  file=sys.stderr)
            return EXIT_NOT_CONVERGED
        return 0
    except NumericalIntegrityError as err:
        print(f"motional-qubit: numerical integrity failure: {err}", file=sys.stderr)
        return EXIT_INTEGRITY


if __name__ == "__main__":
    sys.exit(main())
