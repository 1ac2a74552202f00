"""JSON definition files: parsing, validation, and canonical serialization.

All files carry ``format_version`` and ``kind``; rationals are text "p/q";
indices are 0-based; sparse tensors are arrays of index/value tuples.  Cross
references (a triangular file naming its component algebras) may be inline
objects or paths relative to the referencing file.  Parsing raises
SchemaError; semantic checks live in :func:`validate_definition` and raise
nothing (they report).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Any

from ttba import algebra as alg
from ttba import bimodule as bim
from ttba import builders
from ttba import shear as sh
from ttba.errors import SchemaError, ValidationError
from ttba.exactlin import RatMatrix, format_rational, parse_rational
from ttba.isoclass import IsoData
from ttba.triangular import TriAlgebra, Twist, build_triangular

FORMAT_VERSION = "1"

KINDS = ("algebra", "bimodule", "triangular", "group", "anchored-system",
         "iso-data", "shear")


@dataclass(frozen=True)
class AlgebraDef:
    kind = "algebra"
    algebra: alg.FDAlgebra


@dataclass(frozen=True)
class BimoduleDef:
    kind = "bimodule"
    bimodule: bim.Bimodule


@dataclass(frozen=True)
class TriangularDef:
    kind = "triangular"
    a: alg.FDAlgebra
    b: alg.FDAlgebra
    x: bim.Bimodule
    sigma_a: RatMatrix
    sigma_b: RatMatrix

    def build(self) -> TriAlgebra:
        """Validate the twist matrices and assemble the carrier; raises
        ValidationError on any invariant failure."""
        auto_a = alg.check_automorphism(self.a, self.sigma_a)
        if auto_a is None:
            raise ValidationError("sigma_a is not an algebra automorphism of A")
        auto_b = alg.check_automorphism(self.b, self.sigma_b)
        if auto_b is None:
            raise ValidationError("sigma_b is not an algebra automorphism of B")
        return build_triangular(self.a, self.b, self.x, Twist(auto_a, auto_b))


@dataclass(frozen=True)
class GroupDef:
    kind = "group"
    labels: tuple[str, ...]
    cayley: tuple[tuple[int, ...], ...]

    def build(self) -> builders.FiniteGroup:
        return builders.group_from_cayley([list(r) for r in self.cayley],
                                          list(self.labels))


@dataclass(frozen=True)
class AnchoredDef:
    kind = "anchored-system"
    system: builders.AnchoredFunctionSystem


@dataclass(frozen=True)
class ShearDef:
    kind = "shear"
    f: RatMatrix
    g: RatMatrix


@dataclass(frozen=True)
class IsoDataDef:
    kind = "iso-data"
    alpha: RatMatrix
    beta: RatMatrix
    u: RatMatrix
    theta_f: RatMatrix
    theta_g: RatMatrix
    sigma_file: str
    tau_file: str


Definition = (AlgebraDef | BimoduleDef | TriangularDef | GroupDef | AnchoredDef
              | ShearDef | IsoDataDef)


# ---------------------------------------------------------------------------
# parsing helpers


def _need(obj: dict, key: str, typ: type | tuple[type, ...]) -> Any:
    if key not in obj:
        raise SchemaError(f"missing field {key!r}")
    val = obj[key]
    if not isinstance(val, typ):
        raise SchemaError(f"field {key!r} has wrong type")
    return val


def _parse_matrix(data: Any, what: str) -> RatMatrix:
    if not isinstance(data, list) or not all(isinstance(r, list) for r in data):
        raise SchemaError(f"{what}: expected a dense list-of-rows matrix")
    if data and any(len(r) != len(data[0]) for r in data):
        raise SchemaError(f"{what}: ragged rows")
    rows = len(data)
    cols = len(data[0]) if rows else 0
    m = RatMatrix(rows, cols)
    for r, row in enumerate(data):
        for c, v in enumerate(row):
            val = parse_rational(v)
            if val:
                m._rows[r][c] = val
    return m


def _dump_matrix(m: RatMatrix) -> list[list[str]]:
    return [[format_rational(m.entry(r, c)) for c in range(m.cols)]
            for r in range(m.rows)]


def _parse_sparse_tensor(data: Any, what: str) -> dict[tuple[int, int], dict[int, Fraction]]:
    if not isinstance(data, list):
        raise SchemaError(f"{what}: expected a list of quadruples")
    out: dict[tuple[int, int], dict[int, Fraction]] = {}
    for item in data:
        if not (isinstance(item, list) and len(item) == 4):
            raise SchemaError(f"{what}: each entry must be [i, j, k, value]")
        i, j, k, v = item
        if not all(isinstance(z, int) for z in (i, j, k)):
            raise SchemaError(f"{what}: indices must be integers")
        val = parse_rational(v)
        if val:
            slot = out.setdefault((i, j), {})
            slot[k] = slot.get(k, Fraction(0)) + val
    return out


def _dump_sparse_tensor(tensor: dict[tuple[int, int], dict[int, Fraction]]) \
        -> list[list]:
    items = []
    for (i, j) in sorted(tensor):
        for k in sorted(tensor[(i, j)]):
            items.append([i, j, k, format_rational(tensor[(i, j)][k])])
    return items


def _parse_vec(data: Any, what: str) -> tuple[Fraction, ...]:
    if not isinstance(data, list):
        raise SchemaError(f"{what}: expected a list of rationals")
    return tuple(parse_rational(v) for v in data)


def _parse_int_list(data: Any, what: str) -> tuple[int, ...]:
    if not isinstance(data, list) or not all(isinstance(v, int) for v in data):
        raise SchemaError(f"{what}: expected a list of integers")
    return tuple(data)


# ---------------------------------------------------------------------------
# per-kind parse/dump


def _parse_algebra(obj: dict) -> alg.FDAlgebra:
    dim = _need(obj, "dim", int)
    labels = _need(obj, "basis_labels", list)
    if not all(isinstance(s, str) for s in labels):
        raise SchemaError("basis_labels must be strings")
    structure = _parse_sparse_tensor(_need(obj, "structure", list), "structure")
    unit = _parse_vec(_need(obj, "unit", list), "unit")
    try:
        return alg.FDAlgebra(dim, labels, structure, unit)
    except ValueError as exc:
        raise SchemaError(str(exc)) from exc


def _dump_algebra(a: alg.FDAlgebra) -> dict:
    return {
        "format_version": FORMAT_VERSION,
        "kind": "algebra",
        "dim": a.dim,
        "basis_labels": list(a.basis_labels),
        "structure": _dump_sparse_tensor(a.structure),
        "unit": [format_rational(v) for v in a.unit],
    }


def _resolve_ref(obj: Any, base: Path, expected_kind: str) -> Definition:
    if isinstance(obj, str):
        return load_definition(base / obj, expected_kind)
    if isinstance(obj, dict):
        return _parse_definition(obj, base, expected_kind)
    raise SchemaError(f"expected an inline {expected_kind} object or a path")


def _parse_bimodule(obj: dict, base: Path) -> bim.Bimodule:
    left_alg = _resolve_ref(_need(obj, "left_algebra", (str, dict)), base, "algebra")
    right_alg = _resolve_ref(_need(obj, "right_algebra", (str, dict)), base, "algebra")
    assert isinstance(left_alg, AlgebraDef) and isinstance(right_alg, AlgebraDef)
    return _parse_bimodule_body(obj, left_alg.algebra, right_alg.algebra)


def _parse_bimodule_body(obj: dict, a: alg.FDAlgebra,
                         b: alg.FDAlgebra) -> bim.Bimodule:
    dim = _need(obj, "dim", int)
    left = _parse_sparse_tensor(_need(obj, "left", list), "left")
    right = _parse_sparse_tensor(_need(obj, "right", list), "right")
    try:
        return bim.Bimodule(a, b, dim, left, right)
    except ValueError as exc:
        raise SchemaError(str(exc)) from exc


def _dump_bimodule_body(x: bim.Bimodule) -> dict:
    return {
        "dim": x.dim,
        "left": _dump_sparse_tensor(x.left),
        "right": _dump_sparse_tensor(x.right),
    }


def _dump_bimodule(x: bim.Bimodule) -> dict:
    out = {
        "format_version": FORMAT_VERSION,
        "kind": "bimodule",
        "left_algebra": _dump_algebra(x.left_algebra),
        "right_algebra": _dump_algebra(x.right_algebra),
    }
    out.update(_dump_bimodule_body(x))
    return out


def _parse_triangular(obj: dict, base: Path) -> TriangularDef:
    a_def = _resolve_ref(_need(obj, "algebra_a", (str, dict)), base, "algebra")
    b_def = _resolve_ref(_need(obj, "algebra_b", (str, dict)), base, "algebra")
    assert isinstance(a_def, AlgebraDef) and isinstance(b_def, AlgebraDef)
    a, b = a_def.algebra, b_def.algebra
    x_obj = _need(obj, "bimodule", (str, dict))
    if isinstance(x_obj, str):
        x_def = load_definition(base / x_obj, "bimodule")
        assert isinstance(x_def, BimoduleDef)
        x = x_def.bimodule
        if x.left_algebra != a or x.right_algebra != b:
            raise SchemaError("referenced bimodule is not over algebra_a/algebra_b")
    else:
        x = _parse_bimodule_body(x_obj, a, b)
    sigma_a = _parse_matrix(_need(obj, "sigma_a", list), "sigma_a")
    sigma_b = _parse_matrix(_need(obj, "sigma_b", list), "sigma_b")
    if sigma_a.rows != a.dim or sigma_a.cols != a.dim:
        raise SchemaError("sigma_a has the wrong shape")
    if sigma_b.rows != b.dim or sigma_b.cols != b.dim:
        raise SchemaError("sigma_b has the wrong shape")
    return TriangularDef(a, b, x, sigma_a, sigma_b)


def _dump_triangular(d: TriangularDef) -> dict:
    return {
        "format_version": FORMAT_VERSION,
        "kind": "triangular",
        "algebra_a": _dump_algebra(d.a),
        "algebra_b": _dump_algebra(d.b),
        "bimodule": _dump_bimodule_body(d.x),
        "sigma_a": _dump_matrix(d.sigma_a),
        "sigma_b": _dump_matrix(d.sigma_b),
    }


def _parse_group(obj: dict) -> GroupDef:
    labels = _need(obj, "element_labels", list)
    if not all(isinstance(s, str) for s in labels):
        raise SchemaError("element_labels must be strings")
    table = _need(obj, "cayley", list)
    rows = []
    for row in table:
        rows.append(_parse_int_list(row, "cayley row"))
    if len(rows) != len(labels):
        raise SchemaError("cayley size does not match element_labels")
    return GroupDef(tuple(labels), tuple(rows))


def _dump_group(d: GroupDef) -> dict:
    return {
        "format_version": FORMAT_VERSION,
        "kind": "group",
        "element_labels": list(d.labels),
        "cayley": [list(r) for r in d.cayley],
    }


def _parse_anchored(obj: dict) -> AnchoredDef:
    sys = builders.AnchoredFunctionSystem(
        k=_need(obj, "k", int),
        l=_need(obj, "l", int),
        omega=_need(obj, "omega", int),
        p=_parse_int_list(_need(obj, "p", list), "p"),
        q=_parse_int_list(_need(obj, "q", list), "q"),
        phi=_parse_int_list(_need(obj, "phi", list), "phi"),
        psi=_parse_int_list(_need(obj, "psi", list), "psi"),
    )
    return AnchoredDef(sys)


def _dump_anchored(d: AnchoredDef) -> dict:
    s = d.system
    return {
        "format_version": FORMAT_VERSION,
        "kind": "anchored-system",
        "k": s.k, "l": s.l, "omega": s.omega,
        "p": list(s.p), "q": list(s.q),
        "phi": list(s.phi), "psi": list(s.psi),
    }


def _parse_shear(obj: dict) -> ShearDef:
    return ShearDef(_parse_matrix(_need(obj, "f", list), "f"),
                    _parse_matrix(_need(obj, "g", list), "g"))


def _dump_shear(d: ShearDef) -> dict:
    return {
        "format_version": FORMAT_VERSION,
        "kind": "shear",
        "f": _dump_matrix(d.f),
        "g": _dump_matrix(d.g),
    }


def _parse_iso_data(obj: dict) -> IsoDataDef:
    theta = _need(obj, "theta", dict)
    return IsoDataDef(
        alpha=_parse_matrix(_need(obj, "alpha", list), "alpha"),
        beta=_parse_matrix(_need(obj, "beta", list), "beta"),
        u=_parse_matrix(_need(obj, "u", list), "u"),
        theta_f=_parse_matrix(_need(theta, "f", list), "theta.f"),
        theta_g=_parse_matrix(_need(theta, "g", list), "theta.g"),
        sigma_file=_need(obj, "sigma_file", str),
        tau_file=_need(obj, "tau_file", str),
    )


def _dump_iso_data(d: IsoDataDef) -> dict:
    return {
        "format_version": FORMAT_VERSION,
        "kind": "iso-data",
        "alpha": _dump_matrix(d.alpha),
        "beta": _dump_matrix(d.beta),
        "u": _dump_matrix(d.u),
        "theta": {"f": _dump_matrix(d.theta_f), "g": _dump_matrix(d.theta_g)},
        "sigma_file": d.sigma_file,
        "tau_file": d.tau_file,
    }


# ---------------------------------------------------------------------------
# entry points


def _parse_definition(obj: dict, base: Path,
                      expected_kind: str | None = None) -> Definition:
    if not isinstance(obj, dict):
        raise SchemaError("definition must be a JSON object")
    version = _need(obj, "format_version", str)
    if version != FORMAT_VERSION:
        raise SchemaError(f"unsupported format_version {version!r}")
    kind = _need(obj, "kind", str)
    if kind not in KINDS:
        raise SchemaError(f"unknown kind {kind!r}")
    if expected_kind is not None and kind != expected_kind:
        raise SchemaError(f"expected a {expected_kind} file, got {kind!r}")
    if kind == "algebra":
        return AlgebraDef(_parse_algebra(obj))
    if kind == "bimodule":
        return BimoduleDef(_parse_bimodule(obj, base))
    if kind == "triangular":
        return _parse_triangular(obj, base)
    if kind == "group":
        return _parse_group(obj)
    if kind == "anchored-system":
        return _parse_anchored(obj)
    if kind == "shear":
        return _parse_shear(obj)
    return _parse_iso_data(obj)


def load_definition(path: str | Path,
                    expected_kind: str | None = None) -> Definition:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise SchemaError(f"cannot read {path}: {exc}") from exc
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path}: invalid JSON: {exc}") from exc
    return _parse_definition(obj, path.parent, expected_kind)


def dump_definition(defn: Definition) -> dict:
    if isinstance(defn, AlgebraDef):
        return _dump_algebra(defn.algebra)
    if isinstance(defn, BimoduleDef):
        return _dump_bimodule(defn.bimodule)
    if isinstance(defn, TriangularDef):
        return _dump_triangular(defn)
    if isinstance(defn, GroupDef):
        return _dump_group(defn)
    if isinstance(defn, AnchoredDef):
        return _dump_anchored(defn)
    if isinstance(defn, ShearDef):
        return _dump_shear(defn)
    if isinstance(defn, IsoDataDef):
        return _dump_iso_data(defn)
    raise TypeError(f"not a definition: {defn!r}")


def dumps_definition(defn: Definition) -> str:
    return canonical_json(dump_definition(defn))


def canonical_json(obj: Any) -> str:
    """Deterministic byte stream: sorted keys, fixed separators, newline."""
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def validate_definition(defn: Definition) -> list[str]:
    """Run every applicable semantic validation; empty report iff valid."""
    if isinstance(defn, AlgebraDef):
        return alg.check_algebra(defn.algebra)
    if isinstance(defn, BimoduleDef):
        report = alg.check_algebra(defn.bimodule.left_algebra)
        report += alg.check_algebra(defn.bimodule.right_algebra)
        if not report:
            report += bim.check_bimodule(defn.bimodule)
        return report
    if isinstance(defn, TriangularDef):
        try:
            defn.build()
        except ValidationError as exc:
            return list(exc.violations)
        return []
    if isinstance(defn, GroupDef):
        try:
            defn.build()
        except ValidationError as exc:
            return list(exc.violations)
        return []
    if isinstance(defn, AnchoredDef):
        return defn.system.validate()
    if isinstance(defn, ShearDef):
        return []
    if isinstance(defn, IsoDataDef):
        report = []
        if defn.u.rows != defn.u.cols:
            report.append("u is not square")
        if defn.alpha.rows != defn.alpha.cols:
            report.append("alpha is not square")
        if defn.beta.rows != defn.beta.cols:
            report.append("beta is not square")
        return report
    raise TypeError(f"not a definition: {defn!r}")


def shear_from_def(d: ShearDef) -> sh.Shear:
    return sh.Shear(d.f, d.g)


def iso_data_def_from_witness(d: IsoData, sigma_file: str,
                              tau_file: str) -> IsoDataDef:
    """Wrap a verified witness for serialization."""
    return IsoDataDef(alpha=d.alpha.matrix, beta=d.beta.matrix, u=d.u,
                      theta_f=d.theta.f, theta_g=d.theta.g,
                      sigma_file=sigma_file, tau_file=tau_file)
