"""Golden fixtures: every built-in covering-lattice computation frozen as
JSON, recomputed from inputs and diffed bit-exactly on demand.

Lattice identities are certified as (invariant tuple + explicit unimodular
base-change witness), never as bare Gram equality of abstract claims: the
witness W must satisfy W . G_reference . W^T = G_computed with det = +-1.

The fixture directory ships inside the package; the ENRIQUESLAB_FIXTURES
environment variable points somewhere else when set.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from importlib import resources

from . import exact
from .covers import descend_form, model_by_name, transfer_composite
from .errors import UnknownFixture
from .isometry import close_group, identity_isometry
from .lattices import (
    direct_sum,
    invariant_tuple,
    make_lattice,
    rank_one,
    restrict_form,
    standard_lattice,
)
from .periods import weight_one_space
from .realization import (
    dehn_twist_reflection,
    decide_realization,
    enriques_realizable,
    find_invariant_positive_3plane,
    lift_group,
    ricci_flat_implies_complex_witness,
)
from .serialize import decode_matrix, encode_matrix

_ALIASES = {
    "kummer-d2-invariant": "kummer-d2-n1-invariant",
    "kummer-d3-invariant": "kummer-d3-n2-invariant",
    "kummer-d4-invariant": "kummer-d4-n3-invariant",
}


@dataclass(frozen=True)
class FixtureResult:
    name: str
    passed: bool
    details: tuple  # human-readable mismatch lines; empty when passed

    def __bool__(self):
        return self.passed


def _fixture_dir():
    override = os.environ.get("ENRIQUESLAB_FIXTURES")
    if override:
        return override
    return str(resources.files("enriqueslab").joinpath("data").joinpath("fixtures"))


def fixture_names():
    d = _fixture_dir()
    names = [f[:-5] for f in os.listdir(d) if f.endswith(".json")]
    return sorted(names)


def load_fixture(name: str) -> dict:
    name = _ALIASES.get(name, name)
    path = os.path.join(_fixture_dir(), name + ".json")
    if not os.path.exists(path):
        raise UnknownFixture(f"no fixture named {name!r}")
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)


def reference_lattice(spec):
    """Block list like [["U", 2], ["E8", -2], [-4]] -> direct sum lattice."""
    blocks = []
    for block in spec:
        if len(block) == 1:
            blocks.append(rank_one(int(block[0])))
        else:
            blocks.append(standard_lattice(block[0], int(block[1])))
    return direct_sum(*blocks)


def _tuple_of(lat):
    rank, sig, det, even, disc = invariant_tuple(lat)
    return [rank, list(sig), det, even, list(disc)]


def _check(cond, message, details):
    if not cond:
        details.append(message)


def _witness_ok(witness, g_ref, g_got, details):
    w = decode_matrix(witness)
    det = exact.det_bareiss(w)
    _check(det in (1, -1), f"witness determinant {det} is not +-1", details)
    lhs = exact.mat_mul(exact.mat_mul(w, [list(r) for r in g_ref.gram]),
                        exact.transpose(w))
    _check(exact.mat_eq(lhs, [list(r) for r in g_got.gram]),
           "witness does not carry the reference form to the computed form",
           details)


def run_fixture(name: str) -> FixtureResult:
    name = _ALIASES.get(name, name)
    fx = load_fixture(name)
    kind = fx["kind"]
    details = []

    if kind == "model-invariant":
        model = model_by_name(fx["inputs"]["model"])
        image = model.pullback_image()
        got = restrict_form(image)
        ref = reference_lattice(fx["inputs"]["reference"])
        _check(_tuple_of(got) == fx["expected"]["invariant_tuple"],
               f"invariant tuple {_tuple_of(got)} != expected", details)
        _check(_tuple_of(ref) == fx["expected"]["invariant_tuple"],
               "reference lattice tuple drifted", details)
        _check(encode_matrix(got.gram) == fx["expected"]["image_gram"],
               "pullback-image Gram changed", details)
        _check(image.index_in_saturation == fx["expected"]["image_index"],
               f"image index {image.index_in_saturation} != expected", details)
        fixed = restrict_form(model.invariant)
        _check(_tuple_of(fixed) == fx["expected"]["fixed_tuple"],
               "fixed-sublattice tuple changed", details)
        _witness_ok(fx["expected"]["witness"], ref, got, details)

    elif kind == "model-quotient":
        model = model_by_name(fx["inputs"]["model"])
        got = descend_form(model.pullback_image(), model.d)
        ref = reference_lattice(fx["inputs"]["reference"])
        _check(encode_matrix(got.gram) == fx["expected"]["quotient_gram"],
               "descended Gram changed", details)
        _check(exact.mat_eq([list(r) for r in got.gram],
                            [list(r) for r in model.downstairs.gram]),
               "descended form differs from the model's quotient lattice", details)
        _check(_tuple_of(got) == fx["expected"]["quotient_tuple"],
               f"quotient tuple {_tuple_of(got)} != expected", details)
        _witness_ok(fx["expected"]["witness"], ref, got, details)

    elif kind == "transfer":
        model = model_by_name(fx["inputs"]["model"])
        rep = transfer_composite(model)
        want = exact.mat_scale(exact.identity_matrix(fx["expected"]["size"]),
                               fx["expected"]["d"])
        _check(exact.mat_eq([list(r) for r in rep.composite], want),
               "transfer composite is not d x identity", details)

    elif kind == "weight-signature":
        model = model_by_name(fx["inputs"]["model"])
        space = weight_one_space(model.action.generators[0])
        _check(space.d == fx["expected"]["d"], f"order {space.d} wrong", details)
        _check(len(space.basis) == fx["expected"]["dim"],
               f"weight-space dim {len(space.basis)} != expected", details)
        _check(list(space.herm_signature) == fx["expected"]["herm_signature"],
               f"hermitian signature {space.herm_signature} != expected", details)
        _check(space.totally_isotropic == fx["expected"]["totally_isotropic"],
               "isotropy flag changed", details)

    elif kind == "dehn-nonrealizable":
        from .covers import enriques_lattice
        lat = enriques_lattice()
        root = tuple(decode_matrix([fx["inputs"]["root"]])[0])
        group = close_group([dehn_twist_reflection(lat, root)])
        rep = enriques_realizable(group)
        _check(rep.metric_verdict == fx["expected"]["metric"],
               "metric verdict changed", details)
        _check(rep.complex_verdict == fx["expected"]["complex"],
               "complex verdict changed", details)
        got_wit = sorted(list(v) for v in rep.upstairs.minus_two_ambient)
        _check(got_wit == sorted(fx["expected"]["witnesses"]),
               "(-2)-vector witnesses changed", details)

    elif kind == "trivial-realizable":
        from .covers import enriques_lattice
        group = close_group([identity_isometry(enriques_lattice())])
        rep = enriques_realizable(group)
        _check(rep.metric_verdict and rep.complex_verdict,
               "trivial group must be realizable in both modes", details)
        _check(rep.upstairs.l_g.rank == fx["expected"]["l_g_rank"],
               "realization invariant is not empty", details)

    elif kind == "k3-involution-realizable":
        from .covers import iota_star
        group = close_group([iota_star()])
        rep = decide_realization(group)
        _check(rep.metric_verdict == fx["expected"]["metric"],
               "metric verdict changed", details)
        _check(rep.complex_verdict == fx["expected"]["complex"],
               "complex verdict changed", details)
        _check(rep.l_g.rank == fx["expected"]["l_g_rank"],
               "realization invariant rank changed", details)

    elif kind == "shared-line":
        from .covers import enriques_lattice
        group = close_group([identity_isometry(enriques_lattice())])
        lifted = lift_group(group)
        plane = find_invariant_positive_3plane(lifted)
        line = ricci_flat_implies_complex_witness(lifted, plane)
        _check(list(line.vector) == fx["expected"]["line"],
               f"fixed line {list(line.vector)} changed", details)
        _check(line.norm == fx["expected"]["norm"], "line norm changed", details)
        _check((line.unit_points_exact is not None) == fx["expected"]["unit_exact"],
               "unit-point exactness changed", details)

    else:
        raise UnknownFixture(f"fixture {name!r} has unknown kind {kind!r}")

    return FixtureResult(name, not details, tuple(details))


def run_all():
    return [run_fixture(name) for name in fixture_names()]


# ---------------------------------------------------------------------------
# regeneration (maintainer path; documents the schema)


def generate_fixture_data(outdir: str) -> None:
    """Recompute every fixture's expected block and write the JSON files."""
    os.makedirs(outdir, exist_ok=True)

    def dump(name, payload):
        with open(os.path.join(outdir, name + ".json"), "w", encoding="utf-8") as fh:
            json.dump(payload, fh, indent=2, sort_keys=True)
            fh.write("\n")

    model_refs = {
        "enriques": ([["U", 2], ["E8", -2]], [["U", 1], ["E8", -1]]),
        "hilb:3": ([["U", 2], ["E8", -2], [-4]], [["U", 1], ["E8", -1], [-2]]),
        "hilb:5": ([["U", 2], ["E8", -2], [-8]], [["U", 1], ["E8", -1], [-4]]),
        "kummer:2:1": ([["U", 2], [-4]], [["U", 1], [-2]]),
        "kummer:2:3": ([["U", 2], [-8]], [["U", 1], [-4]]),
        "kummer:3:2": ([["U", 3], [-6]], [["U", 1], [-2]]),
        "kummer:4:3": ([["U", 4], [-8]], [["U", 1], [-2]]),
    }

    def slug(model_name):
        parts = model_name.split(":")
        if parts[0] == "enriques":
            return "enriques"
        if parts[0] == "hilb":
            return f"hilb-n{parts[1]}"
        return f"kummer-d{parts[1]}-n{parts[2]}"

    for model_name, (inv_ref, quot_ref) in model_refs.items():
        model = model_by_name(model_name)
        image = model.pullback_image()
        got = restrict_form(image)
        ident = encode_matrix(exact.identity_matrix(got.rank))
        dump(slug(model_name) + "-invariant", {
            "name": slug(model_name) + "-invariant",
            "kind": "model-invariant",
            "description": "pullback-image sublattice of the deck action "
                           "matches the reference block form",
            "inputs": {"model": model_name, "reference": inv_ref},
            "expected": {
                "invariant_tuple": _tuple_of(got),
                "image_gram": encode_matrix(got.gram),
                "image_index": image.index_in_saturation,
                "fixed_tuple": _tuple_of(restrict_form(model.invariant)),
                "witness": ident,
            },
        })
        quot = descend_form(image, model.d)
        dump(slug(model_name) + "-quotient", {
            "name": slug(model_name) + "-quotient",
            "kind": "model-quotient",
            "description": "descended form (restricted Gram over d) matches "
                           "the quotient reference blocks",
            "inputs": {"model": model_name, "reference": quot_ref},
            "expected": {
                "quotient_gram": encode_matrix(quot.gram),
                "quotient_tuple": _tuple_of(quot),
                "witness": encode_matrix(exact.identity_matrix(quot.rank)),
            },
        })
        dump("transfer-" + slug(model_name), {
            "name": "transfer-" + slug(model_name),
            "kind": "transfer",
            "description": "push-pull composite equals d times the identity",
            "inputs": {"model": model_name},
            "expected": {"d": model.d, "size": model.downstairs.rank},
        })

    for d, model_name in ((2, "enriques"), (3, "kummer:3:2"), (4, "kummer:4:3")):
        model = model_by_name(model_name)
        space = weight_one_space(model.action.generators[0])
        dump(f"weight-signature-d{d}", {
            "name": f"weight-signature-d{d}",
            "kind": "weight-signature",
            "description": "hermitian signature and isotropy of the "
                           "weight-one eigenspace of the deck generator",
            "inputs": {"model": model_name},
            "expected": {
                "d": space.d,
                "dim": len(space.basis),
                "herm_signature": list(space.herm_signature),
                "totally_isotropic": space.totally_isotropic,
            },
        })

    from .covers import enriques_lattice
    root = [0, 0, 1, 0, 0, 0, 0, 0, 0, 0]
    group = close_group([dehn_twist_reflection(enriques_lattice(), tuple(root))])
    rep = enriques_realizable(group)
    dump("dehn-twist-nonrealizable", {
        "name": "dehn-twist-nonrealizable",
        "kind": "dehn-nonrealizable",
        "description": "reflection in a (-2)-class downstairs lifts to a "
                       "product of two root reflections; its realization "
                       "invariant contains the two roots",
        "inputs": {"root": root},
        "expected": {
            "metric": rep.metric_verdict,
            "complex": rep.complex_verdict,
            "witnesses": sorted(list(v) for v in rep.upstairs.minus_two_ambient),
        },
    })

    dump("trivial-group-realizable", {
        "name": "trivial-group-realizable",
        "kind": "trivial-realizable",
        "description": "trivial quotient group is realizable in both modes",
        "inputs": {},
        "expected": {"l_g_rank": 0},
    })

    from .covers import iota_star
    rep2 = decide_realization(close_group([iota_star()]))
    dump("k3-involution-realizable", {
        "name": "k3-involution-realizable",
        "kind": "k3-involution-realizable",
        "description": "the covering involution is metric realizable with "
                       "empty realization invariant",
        "inputs": {},
        "expected": {"metric": rep2.metric_verdict,
                     "complex": rep2.complex_verdict,
                     "l_g_rank": rep2.l_g.rank},
    })

    trivial = close_group([identity_isometry(enriques_lattice())])
    lifted = lift_group(trivial)
    plane = find_invariant_positive_3plane(lifted)
    line = ricci_flat_implies_complex_witness(lifted, plane)
    dump("shared-invariant-line", {
        "name": "shared-invariant-line",
        "kind": "shared-line",
        "description": "unique involution-fixed line in the invariant plane "
                       "with its two antipodal unit points",
        "inputs": {},
        "expected": {"line": list(line.vector), "norm": line.norm,
                     "unit_exact": line.unit_points_exact is not None},
    })
