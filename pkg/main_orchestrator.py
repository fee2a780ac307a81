"""
Main Orchestrator for the Matroid Certificate Toolkit
Single command-line entry point:
- info / reps / clones / freedom: inspect a matroid document
- certify / verify / fuzz: build, replay and stress non-representability certificates
- budget-scan: oracle-call counts over scaling families
- spike / census: spike construction and transversal counting
- catalog: the bundled fixture matroids
Every command writes one JSON document to stdout (or -o); logs go to stderr.
"""

import argparse
import asyncio
import json
import logging
import sys
from typing import List, Optional

from pydantic import ValidationError

from lib.config import config
from lib.errors import MatroidError, NothingToCertify
from lib.utils import load_json, save_json
from matroids.catalog import check_entry, get_fixture, load_catalog
from matroids.freedom import (
    bound_cor_check,
    clonal_classes,
    freedom_report,
    freedom_upper_from_separation,
    freer_relation,
    uniform_minor_witness,
)
from matroids.oracle import CountedOracle, Matroid, matroid_from_document, matroid_to_document
from matroids.spike import (
    SpikeMatroid,
    lower_bound_census,
    projective_spike,
    relax,
    representable_spike,
    tighten,
)
from matroids.structure import summary
from protocol.adjudicator import load_certificate, verify
from protocol.budget import FAMILIES, call_budget_scan
from protocol.claimant import build_certificate, certificate_document, vital_bound_check
from protocol.fuzz import fuzz_certificate
from protocol.witness import u24_minor_witness
from representation.service import create_representation_service

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_MALFORMED = 2


def _say(message: str) -> None:
    print(message, file=sys.stderr)


class MatroidCertOrchestrator:
    """Runs one subcommand and returns its exit code"""

    def __init__(self):
        self.logger = logging.getLogger(__name__)
        self.representation_service = create_representation_service()

    def load_matroid(self, source: str) -> Matroid:
        """A JSON matroid document, or catalog:<name> for a bundled fixture"""
        if source.startswith("catalog:"):
            return get_fixture(source.split(":", 1)[1]).matroid
        return matroid_from_document(load_json(source))

    def run_info(self, args) -> int:
        matroid = self.load_matroid(args.matroid)
        document = summary(matroid)
        document["v"] = config.schema_version
        save_json(document, args.output)
        return EXIT_OK

    def run_reps(self, args) -> int:
        matroid = self.load_matroid(args.matroid)
        reps = self.representation_service.enumerate_reps(matroid, args.p)
        save_json(
            {
                "v": config.schema_version,
                "p": args.p,
                "count": len(reps),
                "labels": list(matroid.groundset),
                "representatives": [m.to_dict() for m in reps],
            },
            args.output,
        )
        _say(f"🔢 {len(reps)} inequivalent GF({args.p}) representation(s)")
        return EXIT_OK

    def run_certify(self, args) -> int:
        matroid = self.load_matroid(args.matroid)
        if args.u24:
            witness = u24_minor_witness(matroid)
            if witness is None:
                _say("❌ No U_{2,4}-minor found")
                return EXIT_NEGATIVE
            save_json(witness.model_dump(mode="json"), args.output)
            _say(f"✅ U_{{2,4}}-minor on {witness.quad}")
            return EXIT_OK

        try:
            certificate = build_certificate(matroid, args.p)
        except NothingToCertify as e:
            _say(f"❌ {e.message}")
            return EXIT_NEGATIVE

        document = certificate_document(certificate)
        if args.report_vital:
            document = {
                "certificate": document,
                "vital": [row.to_dict() for row in vital_bound_check(matroid, certificate)],
            }
        save_json(document, args.output)
        _say(f"✅ Certificate with {len(certificate.levels)} levels over GF({args.p})")
        return EXIT_OK

    def run_verify(self, args) -> int:
        matroid = self.load_matroid(args.matroid)
        document = load_json(args.certificate)
        if "certificate" in document and "kind" not in document:
            document = document["certificate"]
        certificate = load_certificate(document)
        oracle = CountedOracle(matroid)
        report = verify(oracle, certificate)
        save_json(report.to_dict(), args.output)
        if report.accepted:
            _say(f"✅ Accepted after {report.oracle_calls} oracle calls")
            return EXIT_OK
        _say(f"❌ Rejected: {report.reason}")
        return EXIT_NEGATIVE

    def run_fuzz(self, args) -> int:
        matroid = self.load_matroid(args.matroid)
        result = fuzz_certificate(CountedOracle(matroid), load_json(args.certificate), args.rounds, args.seed)
        result["v"] = config.schema_version
        save_json(result, args.output)
        if result["accepted"]:
            _say(f"❌ {len(result['accepted'])} mutated certificate(s) accepted")
            return EXIT_NEGATIVE
        _say(f"✅ All {args.rounds} mutated certificates rejected")
        return EXIT_OK

    async def run_budget_scan(self, args) -> int:
        ns = args.n if args.n else list(range(args.n_min, args.n_max + 1))
        scan = await call_budget_scan(args.family, args.p, ns)
        save_json(scan.to_dict(), args.output)
        ok = scan.within_margin and all(row.accepted for row in scan.rows)
        _say(f"{'✅' if ok else '❌'} {args.family}: c={scan.c}, c'={scan.c_prime}")
        return EXIT_OK if ok else EXIT_NEGATIVE

    def run_spike(self, args) -> int:
        if args.spike_command == "gen":
            spike, matrix = representable_spike(args.p, args.n, args.alpha or [1] * args.n)
            document = matroid_to_document(spike)
            if args.with_matrix:
                document = {"v": config.schema_version, "spike": document, "matrix": matrix.to_dict()}
        elif args.spike_command == "projective":
            spike, matrix = projective_spike(args.p, args.n, args.shifts, args.offsets)
            document = {"v": config.schema_version, "spike": matroid_to_document(spike), "matrix": matrix.to_dict()}
        else:
            spike = self._load_spike(args.matroid)
            change = relax if args.spike_command == "relax" else tighten
            document = matroid_to_document(change(spike, args.transversal))
        save_json(document, args.output)
        return EXIT_OK

    def _load_spike(self, source: str) -> SpikeMatroid:
        matroid = self.load_matroid(source)
        if not isinstance(matroid, SpikeMatroid):
            raise MatroidError(f"{source} is not a spike document")
        return matroid

    def run_census(self, args) -> int:
        result = lower_bound_census(self._load_spike(args.matroid), args.q)
        save_json(result.to_dict(), args.output)
        return EXIT_OK

    def run_freedom(self, args) -> int:
        matroid = self.load_matroid(args.matroid)
        if args.bound_check is not None:
            report = bound_cor_check(matroid, args.bound_check)
            save_json(report.to_dict(), args.output)
            return EXIT_OK if report.ok else EXIT_NEGATIVE
        if args.element is None:
            raise MatroidError("freedom needs --element (or --bound-check P)")
        cap = args.cap if args.cap is not None else len(matroid.groundset)
        document = freedom_report(matroid, args.element, cap).to_dict()
        if args.separation is not None:
            document["separation_bound"] = {
                "t": args.separation,
                "holds": freedom_upper_from_separation(matroid, args.element, args.separation),
            }
        if args.uniform_minor:
            document["uniform_minor"] = uniform_minor_witness(matroid, args.element).to_dict()
        save_json(document, args.output)
        _say(f"🧭 freedom({args.element}) = {document['freedom']}")
        return EXIT_OK

    def run_clones(self, args) -> int:
        matroid = self.load_matroid(args.matroid)
        document = freer_relation(matroid).to_dict()
        document["classes"] = clonal_classes(matroid)
        document["v"] = config.schema_version
        save_json(document, args.output)
        return EXIT_OK

    def run_catalog(self, args) -> int:
        entries = load_catalog(args.path)
        if args.catalog_command == "list":
            save_json({"v": config.schema_version, "fixtures": [e.to_dict() for e in entries.values()]}, args.output)
            return EXIT_OK
        if args.catalog_command == "export":
            save_json(matroid_to_document(get_fixture(args.name, args.path).matroid), args.output)
            return EXIT_OK

        failures = {}
        for name, entry in entries.items():
            problems = check_entry(entry)
            if problems:
                failures[name] = problems
                _say(f"❌ {name}: {'; '.join(problems)}")
        save_json({"v": config.schema_version, "checked": len(entries), "failures": failures}, args.output)
        if not failures:
            _say(f"✅ All {len(entries)} catalog fixtures match their recorded properties")
        return EXIT_NEGATIVE if failures else EXIT_OK


def create_argument_parser():
    """Create argument parser for command-line options"""
    parser = argparse.ArgumentParser(
        prog="matroid-cert",
        description="Matroid non-representability certificates - unified entry point",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  %(prog)s info fixtures/fano.json                      # Rank, circuits, cyclic flats
  %(prog)s reps fixtures/u24.json --p 2                 # {"count": 0, ...}
  %(prog)s certify fixtures/u24.json --p 2 -o cert.json # Build a certificate
  %(prog)s verify fixtures/u24.json cert.json           # Replay it (exit 0/1/2)
  %(prog)s certify fixtures/u24.json --u24              # Eight-call U_{2,4} witness
  %(prog)s budget-scan --family u24-free --p 2 --n-max 8
  %(prog)s spike gen --p 3 --n 6 | %(prog)s census - --q 3
  %(prog)s freedom catalog:u24 --element a
  %(prog)s catalog check                                # Re-derive catalog properties
        """,
    )
    parser.add_argument("--log-level", choices=["DEBUG", "INFO", "WARNING", "ERROR"], default=None,
                        help=f"Set logging level (default: {config.log_level})")
    parser.add_argument("--validate-config", action="store_true", help="Validate configuration and exit")

    subparsers = parser.add_subparsers(dest="command")

    def command(name: str, help_text: str) -> argparse.ArgumentParser:
        sub = subparsers.add_parser(name, help=help_text)
        sub.add_argument("-o", "--output", default="-", help="Output path (default: stdout)")
        return sub

    info = command("info", "Summarize a matroid")
    info.add_argument("matroid", help="Matroid JSON file, '-' for stdin, or catalog:<name>")

    reps = command("reps", "Enumerate inequivalent GF(p)-representations")
    reps.add_argument("matroid")
    reps.add_argument("--p", type=int, required=True)

    certify = command("certify", "Build a non-representability certificate")
    certify.add_argument("matroid")
    certify.add_argument("--p", type=int, default=2)
    certify.add_argument("--u24", action="store_true", help="Emit an eight-call U_{2,4}-minor witness instead")
    certify.add_argument("--report-vital", action="store_true", help="Compare each final flat's rank with the freedom")

    verify_cmd = command("verify", "Replay a certificate against a counted oracle")
    verify_cmd.add_argument("matroid")
    verify_cmd.add_argument("certificate", help="Certificate JSON file or '-' for stdin")

    fuzz = command("fuzz", "Verify mutated copies of a certificate")
    fuzz.add_argument("matroid")
    fuzz.add_argument("certificate")
    fuzz.add_argument("--rounds", type=int, default=100)
    fuzz.add_argument("--seed", type=int, required=True)

    budget = command("budget-scan", "Oracle calls of certificate verification over a family")
    budget.add_argument("--family", choices=sorted(FAMILIES), required=True)
    budget.add_argument("--p", type=int, default=2)
    budget.add_argument("--n", type=int, nargs="*", help="Explicit family parameters")
    budget.add_argument("--n-min", type=int, default=0)
    budget.add_argument("--n-max", type=int, default=4)

    spike = subparsers.add_parser("spike", help="Build and modify spikes")
    spike_commands = spike.add_subparsers(dest="spike_command", required=True)
    gen = spike_commands.add_parser("gen", help="Spike of [I | J + diag(1/alpha)] over GF(p)")
    gen.add_argument("--p", type=int, required=True)
    gen.add_argument("--n", type=int, required=True)
    gen.add_argument("--alpha", type=int, nargs="*", help="Nonzero field values, one per leg (default all 1)")
    gen.add_argument("--with-matrix", action="store_true")
    projective = spike_commands.add_parser("projective", help="Spike read off points of PG(n-1, p)")
    projective.add_argument("--p", type=int, required=True)
    projective.add_argument("--n", type=int, required=True)
    projective.add_argument("--shifts", type=int, nargs="+", required=True)
    projective.add_argument("--offsets", type=int, nargs="+", required=True)
    for name in ("relax", "tighten"):
        change = spike_commands.add_parser(name, help=f"{name.capitalize()} one transversal")
        change.add_argument("matroid")
        change.add_argument("--t", "--transversal", dest="transversal", required=True, help="n-bit string, leg 1 first")
    for sub in spike_commands.choices.values():
        sub.add_argument("-o", "--output", default="-")

    census = command("census", "Count dependent and far transversals of a spike")
    census.add_argument("matroid")
    census.add_argument("--q", type=int, help="Field size for the threshold columns")

    freedom_cmd = command("freedom", "Freedom and cofreedom of an element")
    freedom_cmd.add_argument("matroid")
    freedom_cmd.add_argument("--element")
    freedom_cmd.add_argument("--cap", type=int)
    freedom_cmd.add_argument("--separation", type=int, help="Also test the (t+1)-separation bound for this t")
    freedom_cmd.add_argument("--uniform-minor", action="store_true", help="Also report a uniform minor witness")
    freedom_cmd.add_argument("--bound-check", type=int, metavar="P",
                             help="Check the fixed/cofixed freedom bound over GF(P) for every element")

    clones = command("clones", "Freer-than relation and clonal classes")
    clones.add_argument("matroid")

    catalog = subparsers.add_parser("catalog", help="Bundled fixture matroids")
    catalog.add_argument("--path", default=None, help="Catalog YAML (default: MATROID_CATALOG_PATH)")
    catalog_commands = catalog.add_subparsers(dest="catalog_command", required=True)
    for name in ("list", "check"):
        catalog_commands.add_parser(name).add_argument("-o", "--output", default="-")
    export = catalog_commands.add_parser("export")
    export.add_argument("name")
    export.add_argument("-o", "--output", default="-")

    return parser


def setup_logging(log_level: str):
    """Setup logging configuration (stderr, so stdout stays JSON)"""
    logging.basicConfig(
        level=getattr(logging, log_level),
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
        stream=sys.stderr,
    )


def run(argv: Optional[List[str]] = None) -> int:
    parser = create_argument_parser()
    args = parser.parse_args(argv)

    setup_logging(args.log_level or config.log_level)

    # Validate configuration if requested
    if args.validate_config:
        try:
            config._validate_config()
            _say("✅ Configuration is valid")
            return EXIT_OK
        except ValueError as e:
            _say(f"❌ Configuration error: {e}")
            return EXIT_NEGATIVE

    if args.command is None:
        parser.print_help(sys.stderr)
        return EXIT_MALFORMED

    orchestrator = MatroidCertOrchestrator()
    handlers = {
        "info": orchestrator.run_info,
        "reps": orchestrator.run_reps,
        "certify": orchestrator.run_certify,
        "verify": orchestrator.run_verify,
        "fuzz": orchestrator.run_fuzz,
        "spike": orchestrator.run_spike,
        "census": orchestrator.run_census,
        "freedom": orchestrator.run_freedom,
        "clones": orchestrator.run_clones,
        "catalog": orchestrator.run_catalog,
    }
    try:
        if args.command == "budget-scan":
            return asyncio.run(orchestrator.run_budget_scan(args))
        return handlers[args.command](args)
    except MatroidError as e:
        orchestrator.logger.error(f"{args.command} failed: {e}")
        _say(json.dumps({"error": e.to_dict()}, sort_keys=True))
        return EXIT_MALFORMED
    except ValidationError as e:
        orchestrator.logger.error(f"{args.command}: invalid document: {e.error_count()} error(s)")
        _say(f"❌ Invalid document: {e}")
        return EXIT_MALFORMED
    except (json.JSONDecodeError, FileNotFoundError) as e:
        orchestrator.logger.error(f"{args.command}: cannot read input: {e}")
        _say(f"❌ Cannot read input: {e}")
        return EXIT_MALFORMED


def main():
    """Main entry point"""
    sys.exit(run())


if __name__ == "__main__":
    try:
        main()
    except KeyboardInterrupt:
        print("\n👋 Goodbye!", file=sys.stderr)
        sys.exit(130)
