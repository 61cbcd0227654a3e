"""versal-kit command line: parse an input file, run one computation,
print a text report and optionally write the same report as JSON.

Input format:
    vars: x, y
    field: Q            (or: field: Fp 5)
    x^3 + y^2           (one equation per line)

    base: s             (optional block: a family over k[s]/m^(order+1))
    order: 2
    x^3 + y^2 + s*x     (one member per equation)

Lines starting with `#` are comments. Exit codes: 0 success, 1 mathematical
rejection, 2 parse or I/O error. VERSAL_KIT_SEED fixes the seeds of the
randomized property tests in the test suite; it does not affect this tool.
"""

import argparse
import json
import sys
import time

from .artinian import filtration, make_truncation
from .basis import INFINITE
from .deformation import EmbeddedLifting, mixed_ring
from .field import GF, QQ
from .modules import CertificationError
from .parse import ParseError, parse_poly
from .poly import PolyRing
from .singularity import RejectedInput, Singularity
from .deformation import certify_flat
from .versal import (DeformationFamily, kodaira_spencer, lift_to_next_order,
                     miniversal, verify_versality_order)

DEFAULT_ORDER = 3
ORDERING = "negdegrevlex"


class InputError(ValueError):
    """Malformed input file (reported with the offending line number)."""


def _parse_field(spec):
    spec = spec.strip()
    if spec == "Q":
        return QQ, "Q"
    parts = spec.replace(":", " ").split()
    if len(parts) == 2 and parts[0] in ("Fp", "fp", "FP"):
        try:
            p = int(parts[1])
        except ValueError:
            raise InputError("bad prime in field spec %r" % spec)
        try:
            return GF(p), "Fp:%d" % p
        except ValueError as e:
            raise InputError(str(e))
    raise InputError("field must be Q or Fp <prime>, got %r" % spec)


def read_job(path, field_override=None):
    """Parse the input file into rings, equations, and an optional family."""
    try:
        with open(path) as fh:
            raw = fh.readlines()
    except OSError as e:
        raise InputError(str(e))
    lines = []
    for no, line in enumerate(raw, 1):
        s = line.split("#", 1)[0].strip()
        if s:
            lines.append((no, s))
    if not lines or not lines[0][1].startswith("vars:"):
        raise InputError("line 1 must be `vars: x, y, ...`")
    names = tuple(v.strip() for v in lines[0][1][5:].split(",") if v.strip())
    if not names:
        raise InputError("line %d: no variables listed" % lines[0][0])
    if len(lines) < 2 or not lines[1][1].startswith("field:"):
        raise InputError("line 2 must be `field: Q` or `field: Fp <p>`")
    field, field_name = _parse_field(lines[1][1][6:])
    if field_override is not None:
        field, field_name = _parse_field(field_override)
    ring = PolyRing(names, field, ORDERING)
    equations = []
    base_block = None
    i = 2
    while i < len(lines):
        no, s = lines[i]
        if s.startswith("base:"):
            base_block = (no, s)
            break
        try:
            equations.append((parse_poly(s, ring), s))
        except ParseError as e:
            raise InputError("line %d: %s" % (no, e))
        i += 1
    if not equations:
        raise InputError("no equations given")
    family = None
    if base_block is not None:
        no, s = base_block
        t_names = tuple(v.strip() for v in s[5:].split(",") if v.strip())
        if not t_names:
            raise InputError("line %d: base block lists no parameters" % no)
        i += 1
        if i >= len(lines) or not lines[i][1].startswith("order:"):
            raise InputError("base block needs an `order: N` line")
        try:
            order = int(lines[i][1][6:].strip())
        except ValueError:
            raise InputError("line %d: bad truncation order" % lines[i][0])
        if order < 1:
            raise InputError("line %d: truncation order must be >= 1" % lines[i][0])
        base = make_truncation(field, t_names, order)
        mixed = mixed_ring(base, ring)
        members = []
        i += 1
        while i < len(lines):
            no, s = lines[i]
            try:
                members.append((parse_poly(s, mixed), s))
            except ParseError as e:
                raise InputError("line %d: %s" % (no, e))
            i += 1
        if len(members) != len(equations):
            raise InputError("family block needs one member per equation "
                             "(%d equations, %d members)" %
                             (len(equations), len(members)))
        family = {"base": base, "t_names": t_names, "order": order,
                  "members": [m for m, _ in members],
                  "member_text": [t for _, t in members]}
    return {
        "path": path,
        "vars": names,
        "field": field,
        "field_name": field_name,
        "ring": ring,
        "equations": [e for e, _ in equations],
        "equation_text": [t for _, t in equations],
        "family": family,
    }


def _scalar(v):
    return str(v)


def _matrix(rows):
    return [[_scalar(v) for v in row] for row in rows]


def _dim(d):
    return "infinite" if d is INFINITE else d


def _vec_str(v):
    return "(%s)" % ", ".join(str(p) for p in v.comps)


def _flat_cert_summary(certs, start_order=1):
    return [{"order": k, "ok": bool(c), "syzygies_checked": len(c.checked)}
            for k, c in enumerate(certs, start_order)]


def _echo(job, order):
    fam = job["family"]
    return {
        "path": job["path"],
        "vars": list(job["vars"]),
        "field": job["field_name"],
        "equations": list(job["equation_text"]),
        "base": None if fam is None else {
            "vars": list(fam["t_names"]),
            "order": fam["order"],
            "members": fam["member_text"],
        },
        "options": {"field": job["field_name"], "order": order,
                    "ordering": ORDERING},
    }


def _require_family(job):
    if job["family"] is None:
        raise InputError("this command needs a `base:` family block")
    fam = job["family"]
    sing = Singularity(job["ring"], job["equations"])
    lift = EmbeddedLifting(fam["base"], sing, fam["members"])
    return sing, lift


def run_invariants(job, order):
    sing = Singularity(job["ring"], job["equations"])
    sing.certify_regular_sequence()
    sing.certify_isolated()
    t1 = sing.tangent_module(1)
    t2 = sing.tangent_module(2)
    inv = {
        "n": job["ring"].nvars,
        "c": sing.c,
        "regular_sequence": True,
        "isolated": True,
        "tjurina": sing.tjurina_number(),
        "milnor": sing.milnor_number() if sing.c == 1 else None,
        "t1_dimension": t1.dimension,
        "t1_basis": [_vec_str(v) for v in t1.basis],
        "t2_dimension": t2.dimension,
    }
    text = ["singularity: %s" % ", ".join(job["equation_text"]),
            "ambient variables: %d, equations: %d" % (inv["n"], inv["c"]),
            "certified: regular sequence, isolated",
            "tjurina = %d" % inv["tjurina"]]
    if inv["milnor"] is not None:
        text.append("milnor = %d" % inv["milnor"])
    text.append("dim T1 = %d, basis %s" % (inv["t1_dimension"],
                                           ", ".join(inv["t1_basis"])))
    text.append("dim T2 = %d" % inv["t2_dimension"])
    return {"invariants": inv}, text


def run_ext(job, order):
    sing = Singularity(job["ring"], job["equations"])
    t0 = sing.tangent_module(0)
    t1 = sing.tangent_module(1)
    t2 = sing.tangent_module(2)
    inv = {
        "t0": {"dimension": _dim(t0.dimension),
               "generators": t0.presentation.rank,
               "relations": len(t0.presentation.relations),
               "witness": _vec_str(t0.witness)},
        "t1": {"dimension": _dim(t1.dimension),
               "generators": t1.presentation.rank,
               "relations": len(t1.presentation.relations),
               "basis": [_vec_str(v) for v in t1.basis]},
        "t2": {"dimension": _dim(t2.dimension)},
    }
    text = ["singularity: %s" % ", ".join(job["equation_text"])]
    for name in ("t0", "t1", "t2"):
        d = inv[name]
        line = "%s: dimension %s" % (name.upper(), d["dimension"])
        if "generators" in d:
            line += " (%d generators, %d relations)" % (d["generators"],
                                                        d["relations"])
        text.append(line)
    text.append("T0 witness: %s" % inv["t0"]["witness"])
    text.append("T1 basis: %s" % ", ".join(inv["t1"]["basis"]))
    return {"invariants": inv}, text


def run_miniversal(job, order):
    sing = Singularity(job["ring"], job["equations"])
    res = miniversal(sing, order=order)
    fam = {
        "parameters": list(res.family.t_names),
        "order": res.family.base.order,
        "members": [str(m) for m in res.family.members],
        "tau": res.tau,
        "t1_basis": [_vec_str(v) for v in res.basis],
        "base_relations": [str(g) for g in res.base_relations.gens],
    }
    certs = {
        "regular_sequence": True,
        "ks_identity": res.ks.is_identity(),
        "flatness": _flat_cert_summary(res.family.flat_certificates),
    }
    text = ["miniversal family: %s" % "; ".join(fam["members"]),
            "tau = %d, parameters %s, truncation order %d" %
            (res.tau, ", ".join(fam["parameters"]), fam["order"]),
            "T1 basis: %s" % ", ".join(fam["t1_basis"]),
            "base relations: %s" % (", ".join(fam["base_relations"]) or "none"),
            "Kodaira-Spencer matrix: %s" % _matrix(res.ks.matrix),
            "flatness certified at orders %s" %
            ", ".join(str(c["order"]) for c in certs["flatness"])]
    return {"family": fam, "ks_matrix": _matrix(res.ks.matrix),
            "certificates": certs}, text


def run_ks(job, order):
    sing, lift = _require_family(job)
    ks = kodaira_spencer(lift)
    fam = {"parameters": list(job["family"]["t_names"]),
           "order": job["family"]["order"],
           "members": [str(m) for m in lift.members]}
    text = ["family: %s" % "; ".join(fam["members"]),
            "Kodaira-Spencer matrix (rows = T1 basis, columns = %s): %s" %
            (", ".join(fam["parameters"]), _matrix(ks.matrix))]
    return {"family": fam, "ks_matrix": _matrix(ks.matrix)}, text


def run_lift(job, order):
    sing, lift = _require_family(job)
    start = DeformationFamily(lift.base, sing, lift.members)
    start.flat_certificates = _certify_start(start)
    lifted = lift_to_next_order(start, order)
    fam = {"parameters": list(job["family"]["t_names"]),
           "order": lifted.base.order,
           "members": [str(m) for m in lifted.members]}
    certs = {"flatness": _flat_cert_summary(lifted.flat_certificates)}
    text = ["lifted family to order %d: %s" % (fam["order"],
                                               "; ".join(fam["members"])),
            "flatness certified at orders %s" %
            ", ".join(str(c["order"]) for c in certs["flatness"])]
    return {"family": fam, "certificates": certs}, text


def _certify_start(family):
    certs = certify_flat(family, filtration(family.base))
    if not all(c.ok for c in certs):
        bad = next(c for c in certs if not c.ok)
        raise RejectedInput("input family is not flat: syzygy %r does not lift"
                            % (bad.failing,))
    return certs


def run_verify(job, order):
    sing, trial = _require_family(job)
    _certify_start(trial)
    report = verify_versality_order(sing, trial, order=order)
    subs = report.substitution_strings()
    out = {
        "ok": report.ok,
        "order": report.order,
        "substitution": subs,
        "steps": [{"k": st.k, "junk_degrees": sorted(set(st.junk_degrees))}
                  for st in report.steps],
    }
    text = ["versality verified to order %d: %s" % (report.order, report.ok),
            "substitution: %s" %
            "; ".join("%s -> %s" % kv for kv in sorted(subs.items()))]
    return {"verify": out}, text


COMMANDS = {
    "invariants": run_invariants,
    "miniversal": run_miniversal,
    "ks": run_ks,
    "lift": run_lift,
    "verify": run_verify,
    "ext": run_ext,
}


def build_parser():
    ap = argparse.ArgumentParser(
        prog="versal-kit",
        description="invariants and miniversal deformations of isolated "
                    "complete-intersection singularities",
        epilog="exit codes: 0 success, 1 mathematical rejection, 2 parse/IO "
               "error. VERSAL_KIT_SEED fixes the test suite's random seeds.")
    ap.add_argument("command", choices=sorted(COMMANDS))
    ap.add_argument("input", help="input file (vars/field/equations)")
    ap.add_argument("--field", default=None, metavar="Fp:P",
                    help="override the input file's field (Q or Fp:P)")
    ap.add_argument("--order", type=int, default=DEFAULT_ORDER, metavar="N",
                    help="truncation / verification order (default %d)"
                         % DEFAULT_ORDER)
    ap.add_argument("--json", default=None, metavar="OUT.JSON",
                    help="also write the report as JSON")
    return ap


def main(argv=None):
    args = build_parser().parse_args(argv)
    t0 = time.perf_counter()
    try:
        job = read_job(args.input, field_override=args.field)
    except InputError as e:
        print("input error: %s" % e, file=sys.stderr)
        return 2
    doc = {
        "command": args.command,
        "input": None,
        "invariants": None,
        "family": None,
        "ks_matrix": None,
        "certificates": None,
        "verify": None,
        "timings": None,
    }
    try:
        doc["input"] = _echo(job, args.order)
        payload, text = COMMANDS[args.command](job, args.order)
    except InputError as e:
        print("input error: %s" % e, file=sys.stderr)
        return 2
    except (RejectedInput, CertificationError, ValueError) as e:
        print("rejected: %s" % e, file=sys.stderr)
        return 1
    doc.update(payload)
    doc["timings"] = {"total_s": round(time.perf_counter() - t0, 6)}
    for line in text:
        print(line)
    if args.json:
        try:
            with open(args.json, "w") as fh:
                json.dump(doc, fh, indent=2)
                fh.write("\n")
        except OSError as e:
            print("cannot write %s: %s" % (args.json, e), file=sys.stderr)
            return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
