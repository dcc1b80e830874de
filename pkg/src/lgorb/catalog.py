"""Fixture-backed catalog of polynomials, table rows and diagram data."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from ._data import data_dir, load_json
from .errors import CorruptFixture, LgorbError, UnknownFigure
from .invpoly import InvPoly
from .lattice import (Conventions, DiagramSpec, FoldingSpec, GramLattice, bar_spec, build_diagram,
                      gabrielov_join)


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    key: str
    f: InvPoly
    kind: str = "primary"
    f_dual: InvPoly | None = None
    reduced_weights: tuple[int, ...] = ()
    quotient_order: int | None = None
    alphas: tuple[int, ...] = ()
    gamma_prime: tuple[int, ...] = ()
    gammas: tuple[int, ...] = ()
    n3: int | None = None
    Gamma: tuple[int, ...] = ()
    extra: dict = field(default_factory=dict, compare=False)

    def to_json(self) -> dict:
        out = {"name": self.name, "key": self.key, "kind": self.kind, "f": str(self.f),
               "f_monomials": self.f.to_json()["monomials"]}
        if self.kind == "primary":
            out.update({"f_dual": str(self.f_dual), "reduced_weights": list(self.reduced_weights),
                        "quotient_order": self.quotient_order, "alphas": list(self.alphas),
                        "gamma_prime": list(self.gamma_prime), "gammas": list(self.gammas),
                        "n3": self.n3, "Gamma": list(self.Gamma)})
        return out


def _key(name: str) -> str:
    return "".join(ch for ch in name if ch.isalnum()).upper()


def _poly(rows, where: str) -> InvPoly:
    try:
        return InvPoly.from_rows(rows)
    except (LgorbError, TypeError, ValueError) as exc:
        raise CorruptFixture(f"{where}: invalid exponent matrix {rows!r}: {exc}") from exc


@lru_cache(maxsize=8)
def _load(path_key: str) -> tuple[CatalogEntry, ...]:
    data = load_json("catalog.json")
    out = []
    try:
        for row in data["primary"]:
            out.append(CatalogEntry(
                name=row["name"], key=row["key"], f=_poly(row["f"], row["name"]),
                f_dual=_poly(row["f_dual"], row["name"]),
                reduced_weights=tuple(row["reduced_weights"]), quotient_order=int(row["quotient_order"]),
                alphas=tuple(row["alphas"]), gamma_prime=tuple(row["gamma_prime"]),
                gammas=tuple(row["gammas"]), n3=int(row["n3"]), Gamma=tuple(row["Gamma"])))
        for kind in ("auxiliary", "exceptional"):
            for row in data[kind]:
                out.append(CatalogEntry(name=row["name"], key=_key(row["name"]),
                                        f=_poly(row["f"], row["name"]), kind=kind,
                                        extra={k: v for k, v in row.items() if k not in ("name", "f")}))
    except (KeyError, TypeError, ValueError) as exc:
        raise CorruptFixture(f"catalog.json is malformed: {exc!r}") from exc
    return tuple(out)


def load_catalog() -> list[CatalogEntry]:
    return list(_load(str(data_dir())))


def primary_entries() -> list[CatalogEntry]:
    return [e for e in load_catalog() if e.kind == "primary"]


def get_entry(name: str) -> CatalogEntry:
    k = _key(name)
    for e in load_catalog():
        if k in (_key(e.key), _key(e.name)):
            return e
    raise KeyError(f"no catalog entry named {name!r}")


@lru_cache(maxsize=8)
def _figures(path_key: str) -> dict:
    return load_json("figures.json")


def load_figures() -> dict:
    return _figures(str(data_dir()))


def source_lattice(key: str, conv: Conventions | None = None) -> GramLattice:
    fig = load_figures()["cases"].get(key)
    if fig is None:
        raise UnknownFigure(key)
    src = fig["source"]
    if src["type"] == "gabrielov":
        return gabrielov_join(src["p"], src["q"])
    spec = DiagramSpec([(v, "vertex") for v in src["vertices"]], [tuple(e) for e in src["edges"]])
    return build_diagram(spec, conv)


def folding_spec(key: str, conv: Conventions | None = None) -> FoldingSpec:
    fig = load_figures()["cases"][key]
    source = source_lattice(key, conv)
    gens = []
    for g in fig["generators"]:
        if g["type"] == "shift":
            p, q = fig["source"]["p"], fig["source"]["q"]
            si, sj = g["shift"]
            gens.append({f"d{i}_{j}": {f"d{(i - 1 + si) % p + 1}_{(j - 1 + sj) % q + 1}": 1}
                         for i in range(1, p + 1) for j in range(1, q + 1)})
        elif g["type"] == "map":
            gens.append(g["images"])
        else:
            raise CorruptFixture(f"unknown generator type {g['type']!r}")
    return FoldingSpec(source, gens, fig["classes"])


FIGURE_ALIASES = {"FIG3": "J30", "FIG5": "U10"}


def figure_gram(name: str, conv: Conventions | None = None) -> GramLattice:
    """Transcribed source diagrams ("fig3", "fig5", or a case key) and reduced
    targets ("fig2:<case>")."""
    k = _key(name.split(":")[0])
    if k == "FIG2":
        if ":" not in name:
            raise UnknownFigure(name)
        try:
            e = get_entry(name.split(":", 1)[1])
        except KeyError as exc:
            raise UnknownFigure(name) from exc
        if e.kind != "primary":
            raise UnknownFigure(name)
        fig = load_figures()["cases"].get(e.key)
        lengths = fig["branch_lengths"] if fig else [g - 1 for g in e.gammas]
        return build_diagram(bar_spec(lengths, e.n3), conv)
    key = FIGURE_ALIASES.get(k, k)
    cases = {(_key(c)): c for c in load_figures()["cases"]}
    if key not in cases:
        raise UnknownFigure(name)
    return source_lattice(cases[key], conv)
