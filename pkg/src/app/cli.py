#!/usr/bin/env python3
"""
LG Witten Class Command Line
Reads space and graph documents, dispatches to the library and prints JSON reports
"""

import hashlib
import json
import logging
import sys
from dataclasses import asdict, dataclass, field
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

import click
from colorama import Fore, Style, just_fix_windows_console

from algebra.chow import FreeCaseInput, free_case_class
from algebra.exact_arith import format_phase_vector, format_rational
from app.documents import (build_graph, build_space, load_graph_document, load_space_document, read_text,
                           space_weights)
from app.verify_suite import DEFAULT_SEED, SUITES, run_suite
from config import config
from errors import DocumentError, LgError
from graphs.spin_graphs import (ContractionMap, automorphism_order, canonical_form, contract_all, contract_edges,
                                forget_tail, split, total_genus, validate)
from lg.lg_space import LgSpace, check_nondegenerate, infer_weights
from lg.polynomial import parse_polynomial
from lg.sectors import enumerate_admissible, euler_characteristics, genus_zero_ranks, is_narrow, virtual_dimension

logger = logging.getLogger(__name__)

GRAPH_ACTIONS = ('validate', 'contract', 'split', 'aut', 'forget', 'canonical', 'genus')


@dataclass
class Report:
    """One JSON document per invocation"""
    command: List[str]
    inputs_digest: str
    results: Dict[str, Any] = field(default_factory=dict)
    warnings: List[str] = field(default_factory=list)
    exit_status: int = 0

    def to_json(self, indent: int) -> str:
        return json.dumps(asdict(self), sort_keys=True, indent=indent)


def setup_logging(level: Optional[str] = None):
    app_config = config.get_app_config()
    handlers: List[logging.Handler] = [logging.StreamHandler(sys.stderr)]
    if app_config.log_file:
        handlers.append(logging.FileHandler(app_config.log_file))
    logging.basicConfig(
        level=getattr(logging, (level or app_config.log_level).upper(), logging.INFO),
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        handlers=handlers,
        force=True,
    )


def diagnostic(message: str, error: bool = False):
    colour = Fore.RED if error else Fore.YELLOW
    click.echo(f"{colour}{message}{Style.RESET_ALL}", err=True)


def inputs_digest(documents: Sequence[bytes], params: Dict[str, Any]) -> str:
    digest = hashlib.sha256()
    for raw in documents:
        digest.update(hashlib.sha256(raw).digest())
    digest.update(json.dumps(params, sort_keys=True, default=str).encode("utf-8"))
    return digest.hexdigest()


def execute(command: List[str], documents: Sequence[bytes], params: Dict[str, Any],
            body: Callable[[Report], None]):
    """Run body, map LgError to its exit status and always print the report"""
    report = Report(command=command, inputs_digest=inputs_digest(documents, params))
    try:
        body(report)
    except LgError as e:
        report.exit_status = e.exit_code
        report.results = {'error': {'kind': e.kind, 'message': str(e)}}
        logger.debug(f"{command[0]} failed with {e.kind}")
        diagnostic(f"{e.kind}: {str(e)}", error=True)

    for warning in report.warnings:
        diagnostic(f"warning: {warning}")
    click.echo(report.to_json(config.get_app_config().indent))
    if report.exit_status:
        sys.exit(report.exit_status)


def parse_int_list(text: str, option: str) -> Tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise click.BadParameter(f"expected comma-separated integers, got {text!r}", param_hint=option)


def _space_summary(space: LgSpace) -> Dict[str, Any]:
    summary = space.to_dict()
    summary['j'] = format_phase_vector(space.j)
    summary['group_generators'] = [format_phase_vector(g) for g in space.group.generators]
    if space.aut is not None:
        summary['aut'] = {
            'order': space.aut.order,
            'invariant_factors': list(space.aut.invariant_factors),
            'generators': [format_phase_vector(g) for g in space.aut.generators],
        }
    return summary


@click.group()
@click.option('--config', 'config_path', type=click.Path(dir_okay=False), default=None,
              help='YAML configuration file')
@click.option('--log-level', type=click.Choice(['DEBUG', 'INFO', 'WARNING', 'ERROR', 'CRITICAL'],
                                               case_sensitive=False), default=None)
def cli(config_path: Optional[str], log_level: Optional[str]):
    """Landau-Ginzburg spaces, spin graphs and free-case Witten classes"""
    if config_path:
        config.reload(config_path)
    setup_logging(log_level)
    if not config.validate_config():
        diagnostic("configuration failed validation, see log", error=True)
        sys.exit(DocumentError.exit_code)


@cli.command()
@click.argument('space_file', type=click.Path(exists=True, dir_okay=False))
def analyze(space_file: str):
    """Weights, non-degeneracy, Aut(W), G and Lambda_G of a space document"""
    raw = read_text(space_file)

    def body(report: Report):
        doc = load_space_document(raw, space_file)
        W = parse_polynomial(doc.polynomial, doc.n)
        override = space_weights(doc)
        try:
            inferred = infer_weights(W)
        except LgError as e:
            if override is None:
                raise
            inferred = None
            report.warnings.append(f"weights could not be inferred ({e.kind}); using the override")
        if override is not None and inferred is not None and override != inferred:
            report.warnings.append(f"weight override {override.to_dict()} differs from inferred {inferred.to_dict()}")

        space = build_space(doc)
        verdict = check_nondegenerate(W, space.weight_system)
        if verdict.nondegenerate is False:
            report.warnings.append(f"nondegenerate=false: {verdict.detail}")
        elif verdict.nondegenerate is None:
            report.warnings.append(f"non-degeneracy indeterminate: {verdict.detail}")

        report.results = {
            'inferred_weights': None if inferred is None else inferred.to_dict(),
            'nondegeneracy': verdict.to_dict(),
            'space': _space_summary(space),
        }

    execute(['analyze', space_file], [raw], {}, body)


@cli.command()
@click.argument('space_file', type=click.Path(exists=True, dir_okay=False))
@click.option('-g', '--genus', type=click.IntRange(min=0), default=0, show_default=True)
@click.option('-l', '--length', type=click.IntRange(min=0), required=True, help='number of markings')
@click.option('--narrow', is_flag=True, help='only narrow sectors')
@click.option('--cap', type=click.IntRange(min=1), default=None, help='enumeration cap')
def sectors(space_file: str, genus: int, length: int, narrow: bool, cap: Optional[int]):
    """g-admissible sector tuples with chi_j and virtual dimension"""
    raw = read_text(space_file)
    params = {'genus': genus, 'length': length, 'narrow': narrow, 'cap': cap}

    def body(report: Report):
        space = build_space(load_space_document(raw, space_file))
        rows = []
        for tup in enumerate_admissible(space, genus, length, narrow_only=narrow, cap=cap):
            narrow_marks = [is_narrow(s) for s in tup.sectors]
            row = {
                'sectors': [s.to_dict() for s in tup.sectors],
                'narrow': narrow_marks,
                'broad': not all(narrow_marks),
                'chi': list(euler_characteristics(genus, tup)),
                'virtual_dimension': virtual_dimension(genus, tup),
            }
            if genus == 0 and all(narrow_marks):
                ranks, coranks = genus_zero_ranks(tup)
                row['ranks'] = list(ranks)
                row['coranks'] = list(coranks)
            rows.append(row)
        report.results = {'count': len(rows), 'tuples': rows}

    execute(['sectors', space_file], [raw], params, body)


@cli.command('free-class')
@click.argument('space_file', type=click.Path(exists=True, dir_okay=False))
@click.option('--ranks', required=True, help='r_1,...,r_n')
@click.option('--coranks', required=True, help='s_1,...,s_n')
@click.option('--dim', 'dimension', type=click.IntRange(min=0), default=None, help='truncation degree D')
@click.option('--numeric', is_flag=True, help='point base: return a rational')
def free_class(space_file: str, ranks: str, coranks: str, dimension: Optional[int], numeric: bool):
    """Free-case Witten class Coeff_{t^{s-r}}"""
    raw = read_text(space_file)
    r = parse_int_list(ranks, '--ranks')
    s = parse_int_list(coranks, '--coranks')
    params = {'ranks': list(r), 'coranks': list(s), 'dim': dimension, 'numeric': numeric}

    def body(report: Report):
        space = build_space(load_space_document(raw, space_file))
        inp = FreeCaseInput.from_space(space, r, s, dimension=dimension, numeric=numeric)
        value = free_case_class(inp)
        if numeric:
            report.results = {'value': format_rational(value)}
        else:
            report.results = {'class': value.serialize(), 'formatted': value.format(), 'dimension': inp.dimension}
        if inp.s < inp.r:
            report.warnings.append(f"s - r = {inp.s - inp.r} < 0, class is zero")

    execute(['free-class', space_file], [raw], params, body)


@cli.command()
@click.argument('graph_file', type=click.Path(exists=True, dir_okay=False))
@click.argument('action', type=click.Choice(GRAPH_ACTIONS))
@click.option('--space', 'space_file', type=click.Path(exists=True, dir_okay=False), default=None,
              help='space document (overrides an embedded space)')
@click.option('--edge', 'edges', type=int, multiple=True, help='edge to contract (repeatable)')
@click.option('--all', 'all_edges', is_flag=True, help='contract every edge')
@click.option('--tail', type=int, default=None, help='tail to forget')
@click.option('--total-genus', 'g_total', type=int, default=None, help='expected total genus for validate')
def graph(graph_file: str, action: str, space_file: Optional[str], edges: Tuple[int, ...], all_edges: bool,
          tail: Optional[int], g_total: Optional[int]):
    """validate | contract | split | aut | forget | canonical | genus"""
    raw = read_text(graph_file)
    documents = [raw]
    space_raw = None
    if space_file:
        space_raw = read_text(space_file)
        documents.append(space_raw)
    params = {'action': action, 'edges': list(edges), 'all': all_edges, 'tail': tail, 'total_genus': g_total}

    def body(report: Report):
        doc = load_graph_document(raw, graph_file)
        gamma = build_graph(doc)

        def space() -> LgSpace:
            if space_raw is not None:
                return build_space(load_space_document(space_raw, space_file))
            if doc.space is not None:
                return build_space(doc.space)
            raise DocumentError(f"'{action}' needs a space: pass --space or embed one")

        def contraction() -> Tuple[Any, ContractionMap]:
            if all_edges:
                return contract_all(gamma)
            return contract_edges(gamma, edges) if edges else (gamma, ContractionMap.identity(gamma))

        if action == 'validate':
            verdict = validate(gamma, space(), g_total)
            report.results = verdict.to_dict()
            if not verdict.valid:
                report.exit_status = LgError.exit_code
        elif action == 'contract':
            target, cm = contraction()
            report.results = {
                'graph': target.to_dict(),
                'vertex_map': list(cm.vertex_map),
                'edge_map': [list(image) for image in cm.edge_map],
            }
        elif action == 'split':
            report.results = {'graph': split(gamma).to_dict()}
        elif action == 'aut':
            _, cm = contraction()
            report.results = {'automorphisms': automorphism_order(cm), 'contracted': sorted(
                k for k, image in enumerate(cm.edge_map) if image[0] == 'vertex')}
        elif action == 'forget':
            if tail is None:
                raise DocumentError("'forget' needs --tail")
            report.results = {'graph': forget_tail(gamma, tail, space()).to_dict()}
        elif action == 'canonical':
            group = space().group if (space_raw is not None or doc.space is not None) else None
            report.results = {'graph': canonical_form(gamma, group).to_dict()}
        else:
            report.results = {'total_genus': total_genus(gamma)}

    execute(['graph', graph_file, action], documents, params, body)


@cli.command()
@click.option('--suite', type=click.Choice(SUITES), default='axioms', show_default=True)
@click.option('--seed', type=int, default=DEFAULT_SEED, show_default=True)
@click.option('--progress', is_flag=True, help='show a progress bar on stderr')
def verify(suite: str, seed: int, progress: bool):
    """Built-in symbolic verification suite; exit 1 on any failed check"""
    params = {'suite': suite, 'seed': seed}

    def body(report: Report):
        result = run_suite(suite, seed=seed, progress=progress)
        report.results = result.to_dict()
        report.warnings.extend(result.warnings)
        if not result.passed:
            report.exit_status = 1

    execute(['verify', suite], [], params, body)


def main():
    just_fix_windows_console()
    cli()


if __name__ == '__main__':
    main()
