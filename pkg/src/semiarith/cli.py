# src/semiarith/cli.py
"""Command line: ``semiarith [--json] [--verbose] [--quiet] [--config FILE] <command> ...``.

Exit codes: 0 success, 1 mathematical negative, 2 precondition or scope
error, 3 internal consistency failure. Human-readable output by default,
``--json`` for a deterministic machine-readable document on stdout.
"""

from __future__ import annotations

import json
import logging
import sys
from collections.abc import Callable, Sequence
from pathlib import Path
from typing import Any

import fire
from pydantic import BaseModel, Field, ValidationError

from .congruence.local import (
    composition_account,
    crt_quotient_check,
    local_ramified,
    local_unramified,
)
from .congruence.order import order_basis
from .congruence.reduction import identify_quotient, reduction_hom
from .congruence.spectrum import congruence_spectrum, reconstruct_field_data
from .core.errors import BadPrimeError, DocumentError, SemiarithError, UnsupportedError
from .core.numfield import NumberField, Subfield, factor_prime, field_create, format_poly, rational_field
from .core.operations.base import setup_logging
from .core.operations.models import SemiarithConfig, default_config
from .finite.field import finite_field, split_prime_power
from .finite.psl2 import psl2_canonical
from .fuchsian.arithmeticity import is_arithmetic, modular_embedding_obstruction
from .fuchsian.group import FuchsianRep, classify_matrix
from .fuchsian.tracefield import is_semi_arithmetic, squares_subgroup, trace_field_condition
from .io.reader import load_document
from .io.writer import document_from_group, dumps
from .rigidity import RigidityReport, rigidity
from .synthetic.groups import BUILTIN_GROUPS, builtin_group, builtin_names

logger = logging.getLogger(__name__)


class NegativeResult(Exception):
    """A well-defined mathematical 'no'; exit code 1."""

    exit_code = 1


class GlobalOptions(BaseModel):
    """Flags shared by every command, read before dispatch."""

    json: bool = Field(False, description="Machine-readable output on stdout")
    verbose: bool = Field(False, description="DEBUG logging on stderr")
    quiet: bool = Field(False, description="No progress bars")
    config: str | None = Field(None, description="YAML configuration file")


def split_global_options(argv: Sequence[str]) -> tuple[GlobalOptions, list[str]]:
    """Remove the shared flags from argv, wherever they appear."""
    values: dict[str, Any] = {}
    rest: list[str] = []
    args = list(argv)
    i = 0
    while i < len(args):
        arg = args[i]
        if arg in ("--json", "--verbose", "--quiet"):
            values[arg[2:]] = True
        elif arg == "--config":
            if i + 1 >= len(args):
                raise DocumentError("--config needs a file name")
            values["config"] = args[i + 1]
            i += 1
        elif arg.startswith("--config="):
            values["config"] = arg.split("=", 1)[1]
        else:
            rest.append(arg)
        i += 1
    return GlobalOptions(**values), rest


def _field_label(k: Subfield) -> str:
    return "Q" if k.degree == 1 else f"Q[t]/({format_poly(k.field.coeffs, 't')})"


def _parse_field(text: Any) -> NumberField:
    text = ",".join(map(str, text)) if isinstance(text, tuple | list) else str(text)
    if text.strip() == "Q":
        return rational_field()
    try:
        poly_text, _, root_text = text.partition(";")
        coeffs = [int(c) for c in poly_text.split(",")]
        lo, hi = root_text.split(",")
        return field_create(coeffs, (lo.strip(), hi.strip()))
    except ValueError as e:
        raise DocumentError(f"cannot read field {text!r}; use Q or 'c0,c1,...;lo,hi'") from e


def _parse_map(
    text: str | Sequence[str] | None, rep_a: FuchsianRep, rep_b: FuchsianRep
) -> list[int] | None:
    if text is None:
        return None
    pairs = text.split(",") if isinstance(text, str) else list(text)
    index_b = {label: i for i, label in enumerate(rep_b.labels)}
    correspondence: dict[int, int] = {}
    for pair in pairs:
        try:
            left, right = (s.strip() for s in str(pair).split(":"))
            correspondence[rep_a.labels.index(left)] = index_b[right]
        except (ValueError, KeyError) as e:
            raise DocumentError(f"cannot read generator pair {pair!r}") from e
    if sorted(correspondence) != list(range(rep_a.n_generators)):
        raise DocumentError("the map must name every generator of the first group")
    return [correspondence[i] for i in range(rep_a.n_generators)]


def _rigidity_lines(report: RigidityReport) -> list[str]:
    lines = ["word | χ(tr²) in A | χ(tr²) in B | disagreeing primes"]
    for w in report.words:
        lines.append(
            f"{w.word} | {w.char_poly_a} | {w.char_poly_b} | {w.disagreeing_primes or '-'}"
        )
    if report.congruence_possible:
        lines.append("congruence preservation: possible at every good prime")
    else:
        lines.append(
            f"congruence preservation: contradicted at {report.contradicted_primes}; "
            f"witness {report.witness_word} at p = {report.witness_prime}"
        )
    if report.conjugator is not None:
        lines.append(f"conjugator: {report.conjugator} (signs {report.conjugator_signs})")
    return lines


class Session:
    """Command implementations sharing one configuration."""

    def __init__(self, options: GlobalOptions) -> None:
        self.options = options
        config = SemiarithConfig.from_yaml(options.config) if options.config else default_config()
        if options.quiet:
            runtime = config.runtime.model_copy(update={"progress": False})
            config = config.model_copy(update={"runtime": runtime})
        self.config = config
        setup_logging("DEBUG" if options.verbose else config.runtime.log_level)

    def emit(self, data: BaseModel | dict[str, Any], lines: Sequence[str]) -> None:
        if self.options.json:
            sys.stdout.write(dumps(data))
        else:
            print("\n".join(lines))

    def resolve(self, group: str) -> FuchsianRep:
        """A built-in name, a document path, or "-" for standard input."""
        if group in BUILTIN_GROUPS:
            return builtin_group(group)
        if group != "-" and not Path(group).exists():
            raise DocumentError(
                f"{group!r} is neither a built-in group ({', '.join(builtin_names())}) nor a file"
            )
        return load_document(group)

    def congruence_target(self, rep: FuchsianRep) -> FuchsianRep:
        """Γ itself under the trace-field condition, Γ^(2) otherwise."""
        if trace_field_condition(rep, self.config).holds:
            return rep
        logger.info(f"{rep.name or 'group'} fails the trace-field condition; using Γ^(2)")
        return squares_subgroup(rep, self.config).group

    # analysis

    def info(self, group: str) -> None:
        """Generators, relators, element types and the entry field."""
        rep = self.resolve(group)
        types = [classify_matrix(g).value for g in rep.generators]
        relators = [rep.format_word(r) for r in rep.relators]
        data = {
            "group": rep.name,
            "entry_field": format_poly(rep.field.coeffs),
            "entry_degree": rep.field.degree,
            "generators": list(rep.labels),
            "types": types,
            "relators": relators,
            "document": document_from_group(rep).model_dump(mode="json"),
        }
        lines = [
            f"group: {rep.name or group}",
            f"entry field: {format_poly(rep.field.coeffs)} (degree {rep.field.degree})",
            *(f"  {label}: {t}" for label, t in zip(rep.labels, types)),
            f"relators: {', '.join(relators) or 'none'}",
        ]
        self.emit(data, lines)

    def trace_field(self, group: str) -> None:
        """Trace field, invariant trace field and the trace-field condition."""
        cond = trace_field_condition(self.resolve(group), self.config)
        data = {
            "trace_field": _field_label(cond.trace_field),
            "trace_field_degree": cond.trace_field.degree,
            "invariant_trace_field": _field_label(cond.invariant_trace_field),
            "invariant_trace_field_degree": cond.invariant_trace_field.degree,
            "trace_field_condition": cond.holds,
        }
        lines = [
            data["trace_field"],
            f"invariant trace field: {data['invariant_trace_field']}",
            f"trace-field condition: {str(cond.holds).lower()}",
        ]
        self.emit(data, lines)

    def semi_arithmetic(self, group: str) -> None:
        """Totally real invariant trace field and integral traces."""
        rep = self.resolve(group)
        result = is_semi_arithmetic(rep, self.config)
        witness = result.non_integral_word
        data = {
            "semi_arithmetic": result.semi_arithmetic,
            "totally_real": result.totally_real,
            "integral": result.integral,
            "non_integral_word": rep.format_word(witness) if witness is not None else None,
        }
        lines = [f"semi-arithmetic: {str(result.semi_arithmetic).lower()}"]
        if witness is not None:
            lines.append(f"non-integral trace at {data['non_integral_word']}")
        self.emit(data, lines)
        if not result.semi_arithmetic:
            raise NegativeResult("not semi-arithmetic")

    def arithmetic(self, group: str) -> None:
        """Arithmeticity via the quaternion symbol of the invariant algebra."""
        report = is_arithmetic(self.resolve(group), self.config)
        rep = report.analysed
        witness = report.trace_bound_witness
        data = {
            "arithmetic": report.arithmetic,
            "semi_arithmetic": report.semi_arithmetic,
            "trace_field_condition": report.tfc,
            "used_squares": report.used_squares,
            "invariant_trace_field": _field_label(report.invariant_trace_field),
            "symbol": [str(report.symbol.a), str(report.symbol.b)],
            "ramified_at": list(report.ramified_at),
            "trace_bound_witness": (
                {"word": rep.format_word(witness.word), "embedding": witness.embedding}
                if witness is not None
                else None
            ),
        }
        lines = [
            f"arithmetic: {str(report.arithmetic).lower()}",
            f"invariant trace field: {data['invariant_trace_field']}",
            f"symbol: ({data['symbol'][0]}, {data['symbol'][1]})",
            f"ramified at real places: {[i for i, r in enumerate(report.ramified_at) if r]}",
        ]
        self.emit(data, lines)
        if not report.arithmetic:
            raise NegativeResult("not arithmetic")

    def mod_embed_check(self, group: str) -> None:
        """|σ(tr γ)| < |tr γ| on hyperbolic words; a violation excludes a modular embedding."""
        rep = self.resolve(group)
        result = modular_embedding_obstruction(rep, config=self.config)
        word = rep.format_word(result.word) if result.word is not None else None
        data = {
            "passed": result.passed,
            "word": word,
            "embedding": result.embedding,
            "checked": result.checked,
        }
        if result.passed:
            lines = [f"passed ({result.checked} hyperbolic words checked)"]
        else:
            lines = [f"violation at word {word}, embedding {result.embedding}: |σ(tr)| >= |tr|"]
        self.emit(data, lines)
        if not result.passed:
            raise NegativeResult("modular embedding obstructed")

    # congruence

    def reduce(self, group: str, p: int) -> None:
        """Γ → PSL(2, o_k/𝔭) at every prime 𝔭 above p."""
        rep = self.congruence_target(self.resolve(group))
        order = order_basis(rep, self.config)
        if p in order.bad_primes:
            raise BadPrimeError(f"{p} ∈ S(Γ) = {sorted(order.bad_primes)}", prime=p)
        results = []
        lines = []
        for P in factor_prime(order.k.field, p):
            hom = reduction_hom(rep, P, order, self.config)
            images = [img.matrix for img in hom.generator_images]
            results.append(
                {
                    "ideal": str(P),
                    "q": hom.q,
                    "images": images,
                    "surjective": hom.surjective,
                    "image_order": hom.image_order,
                }
            )
            lines.append(f"{P}: PSL(2,{hom.q})")
            lines += [f"  {label} ↦ {m}" for label, m in zip(rep.labels, images)]
            if hom.surjective is None:
                lines.append("  surjectivity undecided (closure cap)")
            else:
                verdict = "surjective" if hom.surjective else "not surjective"
                lines.append(f"  {verdict}, order {hom.image_order}")
        self.emit({"group": rep.name, "p": p, "reductions": results}, lines)
        if any(r["surjective"] is False for r in results):
            raise NegativeResult("reduction not surjective")

    def spectrum(self, group: str, pmax: int = 31, compare: str | None = None) -> None:
        """Residue degrees and quotient verdicts for all good p ≤ pmax."""
        report = congruence_spectrum(self.congruence_target(self.resolve(group)), pmax, config=self.config)
        other = None
        if compare is not None:
            target = self.congruence_target(self.resolve(compare))
            other = congruence_spectrum(target, pmax, config=self.config)
        reconstruction = reconstruct_field_data(report, other)
        lines = ["p | quotients"]
        for e in report.entries:
            cells = []
            for q in e.quotients:
                mark = "" if q.surjective else " (undecided)" if q.surjective is None else " (not onto)"
                cells.append(f"{q.ideal}: {q.quotient}{mark}")
            lines.append(f"{e.p} | {', '.join(cells)}")
        lines += [f"{s.p} | skipped: {s.reason}" for s in report.skipped]
        lines.append(f"reconstructed degree: {reconstruction.degree}")
        if reconstruction.similar is not None:
            lines.append(f"splitting types agree: {str(reconstruction.similar).lower()}")
        data = {
            "spectrum": report.model_dump(mode="json"),
            "reconstruction": reconstruction.model_dump(mode="json"),
        }
        self.emit(data, lines)

    def identify(self, group: str, hom: str) -> None:
        """The prime 𝔭 whose reduction matches an epimorphism onto PSL(2, q).

        The hom file is JSON ``{"q": q, "images": [[a, b, c, d], ...]}`` with
        entries as residue-field codes.
        """
        rep = self.congruence_target(self.resolve(group))
        try:
            data = json.loads(Path(hom).read_text(encoding="utf-8"))
        except json.JSONDecodeError as e:
            raise DocumentError(f"malformed JSON: {e.msg}", e.lineno, e.colno) from e
        except OSError as e:
            raise DocumentError(f"cannot read {hom}: {e}") from e
        try:
            q = int(data["q"])
            F = finite_field(*split_prime_power(q))
            images = [psl2_canonical(F, [int(x) for x in m]) for m in data["images"]]
        except (KeyError, TypeError, ValueError) as e:
            raise DocumentError(f"invalid hom document: {e}") from e
        P = identify_quotient(rep, images, config=self.config)
        self.emit({"group": rep.name, "q": q, "ideal": str(P)}, [f"identified: {P} (norm {P.norm})"])

    def rigidity(
        self,
        group_a: str,
        group_b: str,
        map: str | Sequence[str] | None = None,
        maxlen: int = 3,
        pmax: int = 31,
    ) -> None:
        """χ(tr²) comparison under a generator correspondence such as ``alpha:alpha,beta:beta``."""
        rep_a, rep_b = self.resolve(group_a), self.resolve(group_b)
        report = rigidity(rep_a, rep_b, _parse_map(map, rep_a, rep_b), maxlen, pmax, self.config)
        self.emit(report, _rigidity_lines(report))

    # local structure

    def local(self, kind: str, q: int, r: int = 1, composition: bool = False) -> None:
        """``unram``: SL(2, o/𝔭^r); ``ram``: O¹/O¹(M^r) in the division algebra."""
        report: BaseModel
        if kind == "unram":
            unram = local_unramified(q, r, config=self.config)
            steps = ", ".join(s.structure for s in unram.steps) or "none"
            lines = [f"order {unram.order}; steps: {steps}"]
            report = unram
        elif kind == "ram":
            ram = local_ramified(q, r, self.config)
            lines = [f"{'cyclic' if ram.top_cyclic else 'not cyclic'}, order {ram.top_order}"]
            lines += [
                f"  step {s.level}: measured order {s.order}, stated order {s.stated_order},"
                f" exponent {s.exponent}"
                + (f" ({s.note})" if s.note else "")
                for s in ram.steps
            ]
            report = ram
        else:
            raise UnsupportedError(f"unknown local kind {kind!r}; use unram or ram")
        data: dict[str, Any] = {"report": report.model_dump(mode="json")}
        if composition:
            account = composition_account(q, r, kind == "ram", self.config)
            data["composition"] = account.model_dump(mode="json")
            lines.append(f"composition factors: {account.factors}")
            if account.caveat:
                lines.append(account.caveat)
        self.emit(data, lines)

    def crt(self, field: Any = "Q", ideals: Any = (3, 5)) -> None:
        """CRT decomposition at a product of degree-one primes over distinct p.

        ``--field`` is ``Q`` or minpoly coefficients and a root interval,
        e.g. ``'1,0,-5;2,3'``; ``--ideals`` lists ``p`` or ``p^e``, taking the
        first degree-one prime above each p.
        """
        K = _parse_field(field)
        items = str(ideals).split(",") if isinstance(ideals, str | int) else list(ideals)
        levels = []
        for item in items:
            p_text, _, e_text = str(item).strip().partition("^")
            p, e = int(p_text), int(e_text or 1)
            primes = [P for P in factor_prime(K, p) if P.residue_degree == 1]
            if not primes:
                raise UnsupportedError(f"no degree-one prime above {p} in {K}")
            levels.append((primes[0], e))
        report = crt_quotient_check(levels, self.config)
        verdict = "bijective" if report.sl_bijective else "not bijective"
        if report.psl_kernel_elementary:
            kernel = f"(Z/2)^{report.psl_kernel_rank}"
        else:
            kernel = f"order {report.psl_kernel_order}"
        self.emit(report, [f"SL: {verdict} ({report.sl_order}); PSL kernel: {kernel}"])
        if not report.sl_bijective:
            raise NegativeResult("CRT map not bijective")

    # corpus

    def groups(self) -> None:
        """Names of the built-in groups."""
        self.emit({"groups": builtin_names()}, builtin_names())

    def demo(self, pmax: int = 31) -> None:
        """Relators, arithmeticity and rigidity for the two genus-one groups of the corpus."""
        a, b = builtin_group("takeuchi-A"), builtin_group("takeuchi-B")
        results = {}
        lines = []
        for rep in (a, b):
            report = is_arithmetic(rep, self.config)
            field = _field_label(report.invariant_trace_field)
            results[rep.name or "?"] = {
                "relators_verified": [rep.format_word(r) for r in rep.relators],
                "arithmetic": report.arithmetic,
                "invariant_trace_field": field,
            }
            lines.append(
                f"{rep.name}: relator {rep.format_word(rep.relators[0])} = 1 verified; "
                f"arithmetic: {str(report.arithmetic).lower()}; invariant trace field: {field}"
            )
        comparison = rigidity(a, b, None, 2, pmax, self.config)
        lines += _rigidity_lines(comparison)
        self.emit({"groups": results, "rigidity": comparison.model_dump(mode="json")}, lines)

    def commands(self) -> dict[str, Callable[..., None]]:
        return {
            "info": self.info,
            "trace-field": self.trace_field,
            "semi-arithmetic": self.semi_arithmetic,
            "arithmetic": self.arithmetic,
            "mod-embed-check": self.mod_embed_check,
            "reduce": self.reduce,
            "spectrum": self.spectrum,
            "identify": self.identify,
            "rigidity": self.rigidity,
            "local": self.local,
            "crt": self.crt,
            "groups": self.groups,
            "demo": self.demo,
        }


def main(argv: Sequence[str] | None = None) -> int:
    """Run a command and map outcomes to exit codes."""
    try:
        options, rest = split_global_options(sys.argv[1:] if argv is None else argv)
        session = Session(options)
        fire.Fire(session.commands(), command=rest, name="semiarith")
    except NegativeResult:
        return NegativeResult.exit_code
    except ValidationError as e:
        print(f"error: invalid input: {e}", file=sys.stderr)
        return DocumentError.exit_code
    except SemiarithError as e:
        print(f"error: {e}", file=sys.stderr)
        return e.exit_code
    except FileNotFoundError as e:
        print(f"error: {e}", file=sys.stderr)
        return DocumentError.exit_code
    return 0


if __name__ == "__main__":
    sys.exit(main())
