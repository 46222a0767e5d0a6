from __future__ import annotations

from typing import Any, Callable, Dict, List, TypedDict

from langgraph.graph import END, START, StateGraph

from lctspin.clifford import comm_table_check, label_lct_generators, relations_report, volume_report
from lctspin.config import (
    CONSISTENCY_DRAWS,
    DOUBLE_COVER_DRAWS,
    FIRST_ORDER_DRAWS,
    LIE_DRAWS,
    SIZE_CAPS,
    RunConfig,
    Signature,
)
from lctspin.errors import SizeLimit
from lctspin.invariant_lab import invariant_commutator, nd_invariant_probe, square_report, u_algebra_report
from lctspin.lct_core import lie_membership_report
from lctspin.logger import log_lab_util, logger
from lctspin.phase_ops import (
    consistency_report,
    convention_oracle_1d,
    dispersion_symmetry_snapshot,
    product_table_1d,
    product_table_nd,
)
from lctspin.reports import AggregateReport, VerificationReport
from lctspin.spin_rep import double_cover_report, first_order_report, resolve_spin_convention
from lctspin.utils.sampling import make_rng
from lctspin.weyl import CommutationConvention

RELATION_SHAPES = ((2, 0), (2, 2), (4, 4), (6, 6))


class VerifyState(TypedDict, total=False):
    config: RunConfig
    suites: List[str]

    # Conventions
    commutator: str
    conventions: Dict[str, Any]

    # Results
    reports: List[VerificationReport]
    aggregate: AggregateReport

    activity: List[Dict[str, Any]]


def _log(state: VerifyState, stage: str, data: Dict[str, Any]) -> VerifyState:
    log_lab_util(f"{stage}: {data}", title="PIPELINE")
    state.setdefault("activity", []).append({"stage": stage, "data": data})
    return state


def _signatures(config: RunConfig, kind: str) -> List[Signature]:
    """The fixed low-dimensional set plus the requested signature; over-cap requests are refused."""
    wanted = config.signature
    cap = SIZE_CAPS[kind]
    if wanted.n > cap and not config.unsafe_size:
        raise SizeLimit(f"{kind} signature dimension", cap, wanted.n)
    sigs = [Signature.euclidean(1), Signature.euclidean(2), Signature(plus=1, minus=1)]
    sigs = [s for s in sigs if s.n <= cap]
    if wanted not in sigs:
        sigs.append(wanted)
    return sigs


class VerifyPipeline:
    """
    Suite runner as a LangGraph graph:
    init -> resolve_conventions -> run_suites -> finalize, skipping to finalize when
    nothing is selected.
    """

    def __init__(self):
        self._setup_graph()

    # ──────────────── Nodes ──────────────── #

    def n_init(self, state: VerifyState) -> VerifyState:
        config = state["config"]
        state["suites"] = list(config.suites)
        state.setdefault("reports", [])
        state.setdefault("activity", [])
        _log(state, "init", {"suites": state["suites"], "signature": config.signature.tag})
        return state

    def n_resolve_conventions(self, state: VerifyState) -> VerifyState:
        config = state["config"]
        oracle = convention_oracle_1d()
        state["commutator"] = oracle.winner
        # the probe builds C(2N, 2N); above the matrix cap it runs at N = 1
        wanted = config.signature
        spin_sig = wanted if wanted.n <= SIZE_CAPS["matrix"] else Signature.euclidean(1)
        spin = resolve_spin_convention(spin_sig, config.seed)
        state["conventions"] = {
            "commutator": oracle.winner,
            "commutator_candidates": oracle.candidates,
            "spin": spin.tag,
            "spin_signature": spin_sig.tag,
            "adjoint_direction": spin.adjoint_direction,
        }
        _log(state, "resolve_conventions", {"commutator": oracle.winner, "spin": spin.tag})
        return state

    def n_run_suites(self, state: VerifyState) -> VerifyState:
        config = state["config"]
        runners = self._runners(state)
        for name in state["suites"]:
            logger.log_system(f"running suite {name}")
            report = runners[name]()
            report = report if report.suite == name else _renamed(report, name)
            for line in report.failures():
                logger.log_line_failure(name, line.id, line.witness)
            logger.log_report_table(report)
            state["reports"].append(report)
        _log(state, "run_suites", {"ran": len(state["reports"]), "seed": config.seed})
        return state

    def n_finalize(self, state: VerifyState) -> VerifyState:
        config = state["config"]
        aggregate = AggregateReport(
            n=config.n,
            signature=config.signature.tag,
            seed=config.seed,
            conventions=state.get("conventions", {}),
            reports=state.get("reports", []),
        )
        state["aggregate"] = aggregate
        _log(state, "finalize", {"pass": aggregate.passed, "summary": aggregate.summary()})
        return state

    # ──────────────── Suites ──────────────── #

    def _runners(self, state: VerifyState) -> Dict[str, Callable[[], VerificationReport]]:
        config = state["config"]
        tol = config.tolerances
        seed = config.seed
        tag = state["commutator"]

        def msigs():
            return _signatures(config, "matrix")

        def ssigs():
            return _signatures(config, "symbolic")

        conv1 = CommutationConvention.from_tag(tag, (1,))
        wanted = config.signature

        def clifford_1d():
            lg = label_lct_generators(1, Signature.euclidean(1))
            report = comm_table_check(lg, "1d")
            report.extend(volume_report(lg))
            return report

        def clifford_nd():
            report = VerificationReport(suite="clifford-nd")
            for sig in msigs():
                lg = label_lct_generators(sig.n, sig, unsafe_size=config.unsafe_size)
                report.extend(comm_table_check(lg, "nd"), prefix=f"(sig {sig.tag}) ")
                report.extend(volume_report(lg), prefix=f"(sig {sig.tag}) ")
            return report

        def product_nd():
            report = VerificationReport(suite="product-nd")
            for sig in msigs():
                conv = CommutationConvention.from_tag(tag, sig.eta)
                report.extend(product_table_nd(sig.n, sig, conv, unsafe_size=config.unsafe_size), prefix=f"(sig {sig.tag}) ")
                report.extend(dispersion_symmetry_snapshot(sig.n, sig, conv), prefix=f"(sig {sig.tag}) ")
            return report

        def nd_probe():
            sig = wanted if wanted.n >= 2 else Signature.euclidean(2)
            conv = CommutationConvention.from_tag(tag, sig.eta)
            return nd_invariant_probe(sig.n, sig, conv, unsafe_size=config.unsafe_size)

        return {
            "clifford-relations": lambda: relations_report(RELATION_SHAPES, unsafe_size=config.unsafe_size),
            "clifford-1d": clifford_1d,
            "clifford-nd": clifford_nd,
            "lie-membership": lambda: lie_membership_report(LIE_DRAWS, msigs(), make_rng(seed), tol),
            "product-1d": lambda: product_table_1d(conv1),
            "product-nd": product_nd,
            "consistency": lambda: consistency_report(CONSISTENCY_DRAWS, make_rng(seed), msigs(), tag),
            "spin-first-order": lambda: first_order_report(FIRST_ORDER_DRAWS, make_rng(seed), msigs(), seed),
            "double-cover": lambda: double_cover_report(DOUBLE_COVER_DRAWS, make_rng(seed), msigs(), tol, seed),
            "square": lambda: square_report(tag, ssigs(), unsafe_size=config.unsafe_size),
            "u-algebra": lambda: u_algebra_report(ssigs(), make_rng(seed)),
            "invariant": lambda: invariant_commutator(conv1, rng=make_rng(seed)),
            "nd-probe": nd_probe,
        }

    # ─────────────────────────── Graph wiring ─────────────────────────── #

    def _setup_graph(self):
        builder = StateGraph(VerifyState)

        builder.add_node("init", self.n_init)
        builder.add_node("resolve_conventions", self.n_resolve_conventions)
        builder.add_node("run_suites", self.n_run_suites)
        builder.add_node("finalize", self.n_finalize)

        builder.add_edge(START, "init")

        def branch_after_init(state: VerifyState):
            return "run" if state.get("suites") else "nothing_selected"

        builder.add_conditional_edges(
            "init",
            branch_after_init,
            {
                "run": "resolve_conventions",
                "nothing_selected": "finalize",
            },
        )
        builder.add_edge("resolve_conventions", "run_suites")
        builder.add_edge("run_suites", "finalize")
        builder.add_edge("finalize", END)

        self.graph = builder.compile()

    def run(self, config: RunConfig) -> AggregateReport:
        final = self.graph.invoke({"config": config})
        return final["aggregate"]


def _renamed(report: VerificationReport, name: str) -> VerificationReport:
    """Suites report under their registry name; module-level suite ids become line prefixes."""
    out = VerificationReport(suite=name, data=report.data, exploratory=report.exploratory)
    out.extend(report, prefix=f"{report.suite}: ")
    return out


def run(config: RunConfig) -> AggregateReport:
    return VerifyPipeline().run(config)
