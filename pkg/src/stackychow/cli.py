"""Command-line frontend: JSON fan documents in, presentation documents out.

Exit codes: 1 for a malformed document, 2 for a fan failing the stacky-fan
hypotheses, 3 for a semantically invalid request against a well-formed fan.
JSON output is byte-stable: sorted keys, two-space indent, one trailing
newline.  All lattice integers are serialized as decimal strings so values
never pass through floating point or fixed-width readers.
"""

import argparse
import json
import sys
from fractions import Fraction

from stackychow.charring import character_data, sr_ring
from stackychow.gradedpoly import (Poly, RingPresentation, eliminate,
                                   format_poly, hilbert_table)
from stackychow.inertial import (Bundle, MINUS_INFINITY, ORBIFOLD,
                                 PLUS_INFINITY, ProductKind, VIRTUAL,
                                 associativity_witnesses,
                                 inertial_presentation, sector_labels,
                                 star_product)
from stackychow.stackyfan import StackyFan

SCHEMA = "stacky-chow/1"

PRODUCT_NAMES = ("orbifold", "virtual", "v-plus", "v-minus", "plus-inf",
                 "minus-inf")

_FAN_KEYS = {"schema", "rank", "torsion", "b", "max_cones", "bundle", "labels"}


class CliError(Exception):
  """Carries the process exit code along with the message."""

  def __init__(self, code, message):
    super().__init__(message)
    self.code = code


def _schema_error(msg):
  return CliError(1, "schema error: " + msg)


# -- fan documents --------------------------------------------------------------

def _as_int(value, field):
  # bool is an int subclass; a document saying true is still malformed
  if isinstance(value, bool):
    raise _schema_error("field %s: expected an integer" % field)
  if isinstance(value, int):
    return value
  if isinstance(value, str):
    try:
      return int(value, 10)
    except ValueError:
      raise _schema_error("field %s: %r is not a decimal integer"
                          % (field, value))
  raise _schema_error("field %s: expected an integer or decimal string"
                      % field)


def _as_list(value, field):
  if not isinstance(value, list):
    raise _schema_error("field %s: expected a list" % field)
  return value


def parse_fan_document(doc):
  """dict -> (StackyFan, Bundle or None, labels map or None)."""
  if not isinstance(doc, dict):
    raise _schema_error("top level must be an object")
  if doc.get("schema") != SCHEMA:
    raise _schema_error("field schema: expected %r" % SCHEMA)
  unknown = sorted(set(doc) - _FAN_KEYS)
  if unknown:
    raise _schema_error("unknown field %s" % unknown[0])
  for key in ("rank", "torsion", "b", "max_cones"):
    if key not in doc:
      raise _schema_error("missing field %s" % key)
  rank = _as_int(doc["rank"], "rank")
  if rank < 0:
    raise _schema_error("field rank: must be nonnegative")
  torsion = [_as_int(m, "torsion[%d]" % l)
             for l, m in enumerate(_as_list(doc["torsion"], "torsion"))]
  for l, m in enumerate(torsion):
    if m < 2:
      raise _schema_error("field torsion[%d]: orders must be at least 2" % l)
  width = rank + len(torsion)
  rays = []
  for i, row in enumerate(_as_list(doc["b"], "b")):
    row = _as_list(row, "b[%d]" % i)
    if len(row) != width:
      raise _schema_error("field b[%d]: expected %d coordinates, got %d"
                          % (i, width, len(row)))
    rays.append(tuple(_as_int(c, "b[%d][%d]" % (i, j))
                      for j, c in enumerate(row)))
  cones = []
  for s, cone in enumerate(_as_list(doc["max_cones"], "max_cones")):
    cone = _as_list(cone, "max_cones[%d]" % s)
    out = []
    for t, idx in enumerate(cone):
      idx = _as_int(idx, "max_cones[%d][%d]" % (s, t))
      if not 1 <= idx <= len(rays):
        raise _schema_error("field max_cones[%d][%d]: ray index %d out of "
                            "range 1..%d" % (s, t, idx, len(rays)))
      out.append(idx - 1)
    cones.append(tuple(out))
  try:
    fan = StackyFan(rank, tuple(torsion), tuple(rays), tuple(cones))
  except ValueError as e:
    raise _schema_error(str(e))
  bundle = None
  if doc.get("bundle") is not None:
    coeffs = [_as_int(c, "bundle[%d]" % i)
              for i, c in enumerate(_as_list(doc["bundle"], "bundle"))]
    if len(coeffs) != len(rays):
      raise _schema_error("field bundle: expected %d coefficients, got %d"
                          % (len(rays), len(coeffs)))
    try:
      bundle = Bundle(coeffs)
    except ValueError as e:
      raise _schema_error("field bundle: %s" % e)
  labels = None
  if doc.get("labels") is not None:
    raw = doc["labels"]
    if not isinstance(raw, dict):
      raise _schema_error("field labels: expected an object")
    labels = {}
    for key, name in raw.items():
      idx = _as_int(key, "labels key %r" % key)
      if idx < 1:
        raise _schema_error("labels key %r: sector indices start at 1" % key)
      if not isinstance(name, str) or not name:
        raise _schema_error("field labels[%r]: expected a nonempty string"
                            % key)
      labels[idx] = name
    if len(set(labels.values())) != len(labels):
      raise _schema_error("field labels: names are not distinct")
  return fan, bundle, labels


def print_fan_document(fan, bundle=None, labels=None):
  """Canonical document for a fan; inverse of parse_fan_document."""
  doc = {
      "schema": SCHEMA,
      "rank": fan.d,
      "torsion": [str(m) for m in fan.torsion],
      "b": [[str(c) for c in ray] for ray in fan.rays],
      "max_cones": [[i + 1 for i in cone] for cone in fan.max_cones],
  }
  if bundle is not None:
    doc["bundle"] = [str(c) for c in bundle.a]
  if labels is not None:
    doc["labels"] = {str(i): name for i, name in sorted(labels.items())}
  return doc


def load_fan_document(path):
  try:
    with open(path, "r", encoding="utf-8") as fh:
      text = fh.read()
  except OSError as e:
    raise CliError(1, "cannot read %s: %s" % (path, e.strerror or e))
  try:
    doc = json.loads(text)
  except json.JSONDecodeError as e:
    raise _schema_error("%s: line %d column %d: %s"
                        % (path, e.lineno, e.colno, e.msg))
  return parse_fan_document(doc)


def _require_valid(fan):
  errors = fan.validate()
  if errors:
    raise CliError(2, "; ".join(errors))


# -- presentation documents -----------------------------------------------------

def _terms_json(poly):
  terms = []
  for exp, c in poly.sorted_terms():
    powers = [[j + 1, e] for j, e in enumerate(exp) if e]
    terms.append({"coeff": str(c), "powers": powers})
  return terms


def _poly_from_terms(terms, nvars, field):
  out = {}
  for t, term in enumerate(_as_list(terms, field)):
    if not isinstance(term, dict) or set(term) != {"coeff", "powers"}:
      raise _schema_error("field %s[%d]: expected coeff and powers" %
                          (field, t))
    coeff = term["coeff"]
    if not isinstance(coeff, str):
      raise _schema_error("field %s[%d].coeff: expected a string" % (field, t))
    exp = [0] * nvars
    for pair in _as_list(term["powers"], "%s[%d].powers" % (field, t)):
      pair = _as_list(pair, "%s[%d].powers entry" % (field, t))
      if len(pair) != 2:
        raise _schema_error("field %s[%d].powers: entries are [index, power]"
                            % (field, t))
      j = _as_int(pair[0], "%s[%d].powers index" % (field, t))
      e = _as_int(pair[1], "%s[%d].powers power" % (field, t))
      if not 1 <= j <= nvars:
        raise _schema_error("field %s[%d].powers: variable index %d out of "
                            "range 1..%d" % (field, t, j, nvars))
      if e < 1:
        raise _schema_error("field %s[%d].powers: powers must be positive"
                            % (field, t))
      exp[j - 1] += e
    try:
      c = Fraction(coeff)
    except (ValueError, ZeroDivisionError):
      raise _schema_error("field %s[%d].coeff: %r is not a rational"
                          % (field, t, coeff))
    out[tuple(exp)] = out.get(tuple(exp), 0) + c
  return Poly(nvars, out)


def print_presentation_document(pres, metadata):
  return {
      "schema": SCHEMA,
      "coefficients": pres.domain,
      "variables": [{"name": nm, "degree": str(d)}
                    for nm, d in zip(pres.names, pres.degrees)],
      "generators": [{"tag": tag, "terms": _terms_json(g)}
                     for g, tag in zip(pres.generators, pres.tags)],
      "metadata": metadata,
  }


def parse_presentation_document(doc):
  """dict -> (RingPresentation, metadata dict)."""
  if not isinstance(doc, dict):
    raise _schema_error("top level must be an object")
  if doc.get("schema") != SCHEMA:
    raise _schema_error("field schema: expected %r" % SCHEMA)
  domain = doc.get("coefficients")
  if domain not in ("z", "q"):
    raise _schema_error("field coefficients: expected 'z' or 'q'")
  names, degrees = [], []
  for i, var in enumerate(_as_list(doc.get("variables"), "variables")):
    if not isinstance(var, dict) or set(var) != {"name", "degree"}:
      raise _schema_error("field variables[%d]: expected name and degree" % i)
    names.append(var["name"])
    try:
      degrees.append(Fraction(var["degree"]))
    except (ValueError, ZeroDivisionError, TypeError):
      raise _schema_error("field variables[%d].degree: not a rational" % i)
  gens, tags = [], []
  for i, gen in enumerate(_as_list(doc.get("generators"), "generators")):
    if not isinstance(gen, dict) or set(gen) != {"tag", "terms"}:
      raise _schema_error("field generators[%d]: expected tag and terms" % i)
    tags.append(gen["tag"])
    gens.append(_poly_from_terms(gen["terms"], len(names),
                                 "generators[%d].terms" % i))
  try:
    pres = RingPresentation(names, degrees, gens, tags, domain)
  except ValueError as e:
    raise _schema_error(str(e))
  return pres, doc.get("metadata", {})


# -- shared command plumbing ----------------------------------------------------

def _sector_names(fan, labels):
  names = sector_labels(fan)
  if labels:
    k = len(names)
    for idx, name in labels.items():
      if idx > k:
        raise CliError(3, "label index %d out of range: the box has %d "
                          "nonidentity sectors" % (idx, k))
      names[idx - 1] = name
  return names


def _box_rows(fan, names):
  rows = []
  for idx, el in enumerate(fan.box()):
    g = fan.group_element(el)
    rows.append({
        "index": idx,
        "label": "1" if idx == 0 else names[idx - 1],
        "v": [str(c) for c in el.v],
        "q": [str(c) for c in el.q],
        "age": str(el.age),
        "gamma": [str(p) for p in g.gamma_phases],
        "s": [str(p) for p in g.s_phases],
        "cone": [i + 1 for i in el.sigma_min],
    })
  return rows


def _fan_metadata(fan, names, product=None, bundle=None):
  cd = character_data(fan)
  warnings = []
  if any(el.age == 0 for el in fan.box()[1:]):
    warnings.append("age-zero-sector: a nonidentity sector has age 0, so "
                    "graded queries on the inertial presentation will fail")
  return {
      "product": product,
      "bundle": None if bundle is None else [str(c) for c in bundle.a],
      "psi": [[str(c) for c in row] for row in cd.f.entries],
      "box": _box_rows(fan, names),
      "warnings": warnings,
  }


def _product_kind(args, doc_bundle):
  name = getattr(args, "product", None) or "orbifold"
  if name == "orbifold":
    return ORBIFOLD
  if name == "virtual":
    return VIRTUAL
  if name == "plus-inf":
    return PLUS_INFINITY
  if name == "minus-inf":
    return MINUS_INFINITY
  bundle = doc_bundle
  if getattr(args, "bundle", None):
    try:
      bundle = Bundle([int(c) for c in args.bundle.split(",")])
    except ValueError as e:
      raise CliError(3, "--bundle: %s" % e)
  if bundle is None:
    raise CliError(3, "product %s requires a bundle: pass --bundle or add a "
                      "bundle field to the document" % name)
  maker = ProductKind.v_plus if name == "v-plus" else ProductKind.v_minus
  return maker(bundle)


def _domain_for(args, kind):
  coeff = getattr(args, "coeff", None)
  if coeff is None:
    return kind.default_domain
  if coeff == "z" and kind.is_asymptotic:
    raise CliError(3, "asymptotic products require rational coefficients")
  return coeff


def _with_domain(pres, domain):
  if domain is None or domain == pres.domain:
    return pres
  return RingPresentation(pres.names, pres.degrees, pres.generators,
                          pres.tags, domain)


def _resolve_sector(fan, names, token):
  """A sector argument is a document label, w<k>, or a bare box index."""
  if token in names:
    return names.index(token) + 1
  k = len(names)
  if token.startswith("w") and token[1:].isdigit():
    idx = int(token[1:])
    if 1 <= idx <= k:
      return idx
  if token.isdigit():
    idx = int(token)
    if 0 <= idx <= k:
      return idx
  raise CliError(3, "unknown sector %r: expected a document label, w1..w%d, "
                    "or a box index 0..%d" % (token, k, k))


def _emit(args, doc, text):
  if args.format == "text":
    sys.stdout.write(text if text.endswith("\n") else text + "\n")
  else:
    sys.stdout.write(json.dumps(doc, sort_keys=True, indent=2) + "\n")
  return 0


def _presentation_text(pres):
  lines = ["ring over %s" % ("Z" if pres.domain == "z" else "Q"),
           "variables:"]
  for nm, d in zip(pres.names, pres.degrees):
    lines.append("  %s (degree %s)" % (nm, d))
  lines.append("generators:")
  for g, tag in zip(pres.generators, pres.tags):
    lines.append("  [%s] %s" % (tag, format_poly(g, pres.names)))
  return "\n".join(lines)


def _finish_presentation(args, fan, pres, metadata):
  if args.simplify:
    elim = eliminate(pres)
    pres = elim.presentation
    metadata = dict(metadata)
    metadata["eliminated"] = {
        name: _terms_json(poly)
        for name, poly in sorted(elim.substitutions.items())}
  return _emit(args, print_presentation_document(pres, metadata),
               _presentation_text(pres))


# -- commands --------------------------------------------------------------------

def cmd_validate(args):
  fan, bundle, labels = load_fan_document(args.file)
  errors = list(fan.validate())
  doc = {"schema": SCHEMA, "valid": not errors, "errors": errors}
  text = "valid stacky fan" if not errors else "\n".join(errors)
  _emit(args, doc, text)
  return 0 if not errors else 2


def cmd_box(args):
  fan, bundle, labels = load_fan_document(args.file)
  _require_valid(fan)
  names = _sector_names(fan, labels)
  rows = _box_rows(fan, names)
  lines = []
  for row in rows:
    lines.append("%s: v=(%s) q=(%s) age=%s gamma=(%s) s=(%s) cone={%s}" % (
        row["label"], ",".join(row["v"]), ",".join(row["q"]), row["age"],
        ",".join(row["gamma"]), ",".join(row["s"]),
        ",".join(str(i) for i in row["cone"])))
  return _emit(args, {"schema": SCHEMA, "box": rows}, "\n".join(lines))


def cmd_chow(args):
  fan, bundle, labels = load_fan_document(args.file)
  _require_valid(fan)
  pres = _with_domain(sr_ring(fan), getattr(args, "coeff", None))
  names = _sector_names(fan, labels)
  return _finish_presentation(args, fan, pres, _fan_metadata(fan, names))


def cmd_inertial(args):
  fan, doc_bundle, labels = load_fan_document(args.file)
  _require_valid(fan)
  kind = _product_kind(args, doc_bundle)
  domain = _domain_for(args, kind)
  names = _sector_names(fan, labels)
  try:
    pres = inertial_presentation(fan, kind, labels=names, domain=domain,
                                 jobs=args.jobs)
  except ValueError as e:
    raise CliError(3, str(e))
  metadata = _fan_metadata(fan, names, product=args.product or "orbifold",
                           bundle=kind.bundle)
  return _finish_presentation(args, fan, pres, metadata)


def cmd_multiply(args):
  fan, doc_bundle, labels = load_fan_document(args.file)
  _require_valid(fan)
  kind = _product_kind(args, doc_bundle)
  _domain_for(args, kind)
  names = _sector_names(fan, labels)
  els = fan.box()
  i = _resolve_sector(fan, names, args.left)
  j = _resolve_sector(fan, names, args.right)
  target, coeff = star_product(fan, kind, els[i], els[j])
  xnames = ["x%d" % (t + 1) for t in range(fan.n)]
  coeff_text = format_poly(coeff, xnames)
  if target is None:
    label = None
    text = "0 (no common cone)"
  else:
    label = "1" if target.is_identity else names[fan.box_index(target) - 1]
    if coeff.is_zero():
      text = "0"
    elif coeff == Poly.constant(fan.n, 1):
      text = label
    else:
      text = "(%s) * %s" % (coeff_text, label)
  doc = {
      "schema": SCHEMA,
      "product": args.product or "orbifold",
      "factors": [names[i - 1] if i else "1", names[j - 1] if j else "1"],
      "target": label,
      "coefficient": {"terms": _terms_json(coeff), "text": coeff_text},
      "zero": coeff.is_zero(),
  }
  return _emit(args, doc, text)


def cmd_check_assoc(args):
  fan, doc_bundle, labels = load_fan_document(args.file)
  _require_valid(fan)
  kind = _product_kind(args, doc_bundle)
  domain = _domain_for(args, kind)
  names = _sector_names(fan, labels)
  try:
    witnesses = associativity_witnesses(fan, kind, domain=domain,
                                        jobs=args.jobs)
  except ValueError as e:
    raise CliError(3, str(e))
  rows = [[names[i - 1] if i else "1", names[j - 1] if j else "1",
           names[l - 1] if l else "1"] for i, j, l in witnesses]
  doc = {
      "schema": SCHEMA,
      "product": args.product or "orbifold",
      "associative": not witnesses,
      "witnesses": rows,
  }
  text = ("associative" if not witnesses else
          "NOT associative: first witness (%s)" % ", ".join(rows[0]))
  return _emit(args, doc, text)


def cmd_hilbert(args):
  fan, doc_bundle, labels = load_fan_document(args.file)
  _require_valid(fan)
  if args.product:
    kind = _product_kind(args, doc_bundle)
    domain = _domain_for(args, kind)
    names = _sector_names(fan, labels)
    pres = inertial_presentation(fan, kind, labels=names, domain=domain,
                                 jobs=args.jobs)
  else:
    pres = _with_domain(sr_ring(fan), getattr(args, "coeff", None))
  maxdeg = Fraction(2 * fan.d + 2)
  if args.maxdeg is not None:
    try:
      maxdeg = Fraction(args.maxdeg)
    except (ValueError, ZeroDivisionError):
      raise CliError(3, "--maxdeg: %r is not a rational" % args.maxdeg)
  try:
    table = hilbert_table(pres, maxdeg)
  except ValueError as e:
    raise CliError(3, str(e))
  rows = [{"degree": str(r.degree), "free_rank": r.free_rank,
           "torsion": [str(m) for m in r.torsion], "text": r.describe()}
          for r in table]
  text = "\n".join("deg %s: %s" % (r["degree"], r["text"]) for r in rows)
  return _emit(args, {"schema": SCHEMA, "pieces": rows}, text)


# -- argument parsing ------------------------------------------------------------

def build_parser():
  shared = argparse.ArgumentParser(add_help=False)
  shared.add_argument("file", help="fan document (JSON)")
  shared.add_argument("--product", choices=PRODUCT_NAMES, default=None)
  shared.add_argument("--bundle", default=None,
                      help="comma-separated nonnegative integers, one per ray")
  shared.add_argument("--coeff", choices=("z", "q"), default=None)
  shared.add_argument("--simplify", action="store_true",
                      help="eliminate redundant variables before printing")
  shared.add_argument("--maxdeg", default=None,
                      help="degree bound as p/q (hilbert only)")
  shared.add_argument("--format", choices=("json", "text"), default="json")
  shared.add_argument("--jobs", type=int, default=1)
  parser = argparse.ArgumentParser(
      prog="stacky-chow",
      description="Chow ring presentations of toric DM stacks from stacky "
                  "fan documents")
  sub = parser.add_subparsers(dest="command", required=True)
  sub.add_parser("validate", parents=[shared]).set_defaults(run=cmd_validate)
  sub.add_parser("box", parents=[shared]).set_defaults(run=cmd_box)
  sub.add_parser("chow", parents=[shared]).set_defaults(run=cmd_chow)
  sub.add_parser("inertial", parents=[shared]).set_defaults(run=cmd_inertial)
  mult = sub.add_parser("multiply", parents=[shared])
  mult.add_argument("left", help="sector: document label, w<k>, or box index")
  mult.add_argument("right", help="sector: document label, w<k>, or box index")
  mult.set_defaults(run=cmd_multiply)
  sub.add_parser("check-assoc",
                 parents=[shared]).set_defaults(run=cmd_check_assoc)
  sub.add_parser("hilbert", parents=[shared]).set_defaults(run=cmd_hilbert)
  return parser


def main(argv=None):
  parser = build_parser()
  try:
    args = parser.parse_args(argv)
  except SystemExit as e:
    # argparse exits 2 on usage errors; that code is reserved for fans
    # failing their hypotheses, so report usage problems as misuse
    return 0 if not e.code else 3
  try:
    return args.run(args)
  except CliError as e:
    sys.stderr.write("stacky-chow: %s\n" % e)
    return e.code


if __name__ == "__main__":
  sys.exit(main())
