import itertools
import json
import logging
import os
import sys
from typing import Optional

import fire
import pandas as pd
from joblib import Parallel, delayed

from affine_lyndon.analysis import Analyzer, format_blocks, run_checks, w_set_text
from affine_lyndon.config import CACHE_DIR
from affine_lyndon.models import OutputFormat, RunConfig
from affine_lyndon.rootsystem import AffineSystem, ExtRoot, RootKind
from affine_lyndon.slw import SLTable
from affine_lyndon.utils import load_config, load_yaml


logger = logging.getLogger(__name__)


class CheckFailure(RuntimeError):
    """
    Raised when at least one verifier reports a counterexample.
    """


def _config(
    type: Optional[str] = None,
    rank: Optional[int] = None,
    order=None,
    max_delta: Optional[int] = None,
    format: Optional[str] = None,
    cache: Optional[str] = None,
    checks=None,
    algebra: Optional[str] = None,
    factorization: Optional[str] = None,
    config: Optional[str] = None,
    **extra,
) -> RunConfig:
    return load_config(
        config,
        **{
            "system.type": type,
            "system.rank": rank,
            "system.order": order,
            "max_k": max_delta,
            "format": format,
            "cache": cache,
            "checks": checks,
            "algebra": algebra,
            "factorization": factorization,
        },
        **extra,
    )


def default_cache_path(cfg: RunConfig) -> str:
    order = "-".join(map(str, cfg.system.order))
    system = f"{cfg.system.type.upper()}{cfg.system.rank}"
    name = f"{system}_{order}_{cfg.factorization.value}"
    return os.path.join(CACHE_DIR, f"{name}.json")


def _system(cfg: RunConfig) -> AffineSystem:
    return AffineSystem.build(
        cfg.system.type.upper(), cfg.system.rank, cfg.system.order
    )


def _table(cfg: RunConfig, save: bool = False) -> SLTable:
    """
    Load the cached table if there is one, extend it to max_k and save it back.
    """
    path = cfg.cache
    if path and os.path.exists(path):
        table = SLTable.load(path, algebra=cfg.algebra.value)
        if table.system.descriptor != _system(cfg).descriptor:
            raise ValueError(f"Cache {path} holds {table.system.descriptor}.")
        if table.factorization != cfg.factorization.value:
            raise ValueError(f"Cache {path} uses the {table.factorization} recursion.")
        extended = table.watermark_k < cfg.max_k
        table.generate_up_to(cfg.max_k)
    else:
        table = SLTable(
            _system(cfg),
            algebra=cfg.algebra.value,
            factorization=cfg.factorization.value,
            progress=cfg.progress,
        ).generate_up_to(cfg.max_k)
        extended = True
    if path and (save or extended):
        table.save(path)
    return table


def _degree(text) -> tuple:
    if isinstance(text, str):
        return tuple(int(x) for x in text.strip("[]() ").split(","))
    return tuple(int(x) for x in text)


def gen(**flags):
    """
    Generate the SL words of a system up to max_delta and write the JSON cache.
    """
    cfg = _config(**flags)
    if cfg.cache is None:
        cfg = cfg.model_copy(update={"cache": default_cache_path(cfg)})
    table = _table(cfg, save=True)
    height = table.system.delta_height
    strata = pd.DataFrame(
        [
            {
                "k": (root.height - 1) // height + 1,
                "real": int(root.is_real),
                "imaginary": int(not root.is_real),
            }
            for root in table.words
        ]
    )
    counts = strata.groupby("k")[["real", "imaginary"]].sum().reset_index()
    if cfg.format is OutputFormat.JSON:
        print(
            json.dumps(
                {
                    "system": table.system.descriptor,
                    "cache": cfg.cache,
                    "strata": counts.to_dict(orient="records"),
                },
                indent=2,
            )
        )
    else:
        print(f"{table.system.descriptor} -> {cfg.cache}")
        print(counts.to_string(index=False))


def _family_rows(analyzer: Analyzer, words: list, rotations: bool) -> pd.DataFrame:
    rows = []
    for k, word in enumerate(words):
        blocks = analyzer.block_format(word, rotations)
        rows.append(
            {
                "k": k,
                "word": str(word),
                "blocks": format_blocks(blocks),
                "compact": analyzer.compact(blocks),
            }
        )
    return pd.DataFrame(rows)


def table_frames(table: SLTable, rotations: bool = False) -> dict:
    """
    One frame per classical family beta + k delta and per imaginary slot index.
    """
    analyzer = Analyzer(table)
    system = table.system
    frames = {}
    for beta in system.base_real:
        frames[str(ExtRoot(beta))] = _family_rows(
            analyzer, table.chain(beta), rotations
        )
    for i in range(1, system.rank + 1):
        words = [table.slot(k, i) for k in range(1, table.watermark_k + 1)]
        frame = _family_rows(analyzer, words, rotations)
        frame["k"] += 1
        frames[f"(kd,{i})"] = frame
    return frames


def show_table(rotations: bool = False, **flags):
    """
    Print the words of every family, with their block format.
    """
    cfg = _config(**flags)
    frames = table_frames(_table(cfg), rotations or cfg.rotations)
    if cfg.format is OutputFormat.JSON:
        records = {name: f.to_dict(orient="records") for name, f in frames.items()}
        print(json.dumps(records, indent=2))
        return
    for name, frame in frames.items():
        if cfg.format is OutputFormat.MARKDOWN:
            print(f"### {name}\n")
            print(frame.to_markdown(index=False))
        else:
            print(name)
            print(frame.to_string(index=False))
        print()


def _verify_one(cfg: RunConfig) -> list:
    table = _table(cfg)
    return run_checks(table, cfg.checks, cfg.max_k)


def _emit(reports: list, output: OutputFormat):
    reports = sorted(reports, key=lambda r: (r.system, r.check))
    if output is OutputFormat.JSON:
        print(
            json.dumps(
                [r.model_dump(by_alias=True, mode="json") for r in reports], indent=2
            )
        )
    else:
        for report in reports:
            print(report.text())
    failed = [r for r in reports if not r.passed]
    if failed:
        raise CheckFailure(f"{len(failed)} of {len(reports)} checks failed.")


def _run_parallel(configs: list, n_jobs: int) -> list:
    results = Parallel(n_jobs=n_jobs, prefer="threads")(
        delayed(_verify_one)(cfg) for cfg in configs
    )
    return [report for reports in results for report in reports]


def verify(all_orders: bool = False, n_jobs: Optional[int] = None, **flags):
    """
    Run the selected checks; with --all-orders every order of the system is tried.
    """
    cfg = _config(**flags)
    n_jobs = n_jobs or cfg.n_jobs
    if all_orders:
        configs = [
            cfg.model_copy(
                update={
                    "system": cfg.system.model_copy(update={"order": list(order)}),
                    "cache": None,
                }
            )
            for order in itertools.permutations(range(cfg.system.rank + 1))
        ]
    else:
        configs = [cfg]
    logger.info(f"Verifying {len(configs)} orders with {n_jobs} workers")
    _emit(_run_parallel(configs, n_jobs), cfg.format)


def wset(k: int = 1, **flags):
    """
    Print W_{k delta}; pairs flagged with * are costandard factorizations of SL words.
    """
    cfg = _config(**flags)
    table = _table(cfg)
    if k > table.watermark_k:
        raise ValueError(f"Level {k} exceeds the computed bound {table.watermark_k}.")
    pairs = Analyzer(table).w_set(table.system.k_delta(k))
    if cfg.format is OutputFormat.JSON:
        print(
            json.dumps(
                [
                    {"u": str(p.u), "v": str(p.v), "costandard": p.costandard}
                    for p in pairs
                ],
                indent=2,
            )
        )
    else:
        print(w_set_text(pairs))


def _root(table: SLTable, degree, slot: int) -> ExtRoot:
    degree = _degree(degree)
    kind, _ = table.system.classify(degree)
    if kind is RootKind.NONE:
        raise ValueError(f"{degree} is not a positive root.")
    root = ExtRoot(degree, None if kind is RootKind.REAL else slot)
    if not table.has(root):
        raise ValueError(f"{root} is beyond the computed bound {table.watermark_k}.")
    return root


def block(degree, slot: int = 1, rotations: bool = False, **flags):
    """
    Print SL(degree) in block format; imaginary degrees take --slot.
    """
    cfg = _config(**flags)
    table = _table(cfg)
    root = _root(table, degree, slot)
    word = table.sl(root)
    blocks = Analyzer(table).block_format(word, rotations or cfg.rotations)
    print(f"{word}\n{format_blocks(blocks)}")


def chain(degree, **flags):
    """
    Print the chain beta, beta + delta, ... and whether it increases.
    """
    cfg = _config(**flags)
    table = _table(cfg)
    analyzer = Analyzer(table)
    beta = analyzer.reduce(_degree(degree))
    words = table.chain(beta)
    direction = 1 if analyzer.increasing(beta) else -1
    if cfg.format is OutputFormat.JSON:
        print(
            json.dumps(
                {
                    "root": list(beta),
                    "monotonicity": direction,
                    "words": [str(w) for w in words],
                },
                indent=2,
            )
        )
    else:
        print(f"{ExtRoot(beta)} monotonicity {direction:+d}")
        for k, word in enumerate(words):
            print(f"{k}: {word}")


def sweep_configs(path: str) -> list:
    """
    Expand a sweep file into run configs: the grid product of every `values`
    list, with `values: all` for system.order meaning every permutation.
    """
    sweep_file = load_yaml(path)
    fixed, grids = {}, {}
    for key, entry in sweep_file.get("parameters", {}).items():
        if "values" in entry:
            grids[key] = entry["values"]
        else:
            fixed[key] = entry["value"]
    orders = grids.pop("system.order", None)
    configs = []
    keys = list(grids)
    for combination in itertools.product(*(grids[key] for key in keys)):
        point = {**fixed, **dict(zip(keys, combination))}
        rank = int(point["system.rank"])
        if orders == "all":
            choices = [list(o) for o in itertools.permutations(range(rank + 1))]
        elif orders is None:
            choices = [point.pop("system.order", list(range(rank + 1)))]
        else:
            choices = orders
        for order in choices:
            point["system.order"] = order
            configs.append(load_config(**point))
    return configs


def sweep(path: str, n_jobs: Optional[int] = None, format: Optional[str] = None):
    """
    Run every grid point of a sweep file and print one combined report.
    """
    configs = sweep_configs(path)
    n_jobs = n_jobs or configs[0].n_jobs
    logger.info(f"Sweep {path}: {len(configs)} runs")
    _emit(_run_parallel(configs, n_jobs), OutputFormat(format or "text"))


commands = {
    "gen": gen,
    "table": show_table,
    "verify": verify,
    "wset": wset,
    "block": block,
    "chain": chain,
    "sweep": sweep,
}


def main(argv: Optional[list] = None) -> int:
    """
    Run a command and map failures to exit codes: 1 failed checks or a
    table that breaks during generation, 2 usage or config errors, 3 I/O errors.
    """
    try:
        fire.Fire(commands, command=argv, name="aslw")
    except RuntimeError as error:
        # CheckFailure included
        logger.error(str(error))
        return 1
    except ValueError as error:
        logger.error(str(error))
        return 2
    except OSError as error:
        logger.error(str(error))
        return 3
    return 0


def run():
    sys.exit(main())


if __name__ == "__main__":
    run()
