"""
Pydantic models for the JSON emitted by the command line and the harness.
"""

from pydantic import BaseModel, Field
from typing import Any, Dict, List, Literal, Optional, Union

from app.core.codes import NeuralCode, PiercingCertificate
from app.core.exactgeom import Halfspace, LatticePolytope, format_rational
from app.core.nestedsets import ConjectureRow, NestedSet
from app.core.statepoly import StatePolytopeResult
from app.core.toric import Binomial, GroebnerBasis


class HalfspaceModel(BaseModel):
    """normal·x ≥ offset (facet) or normal·x = offset (equality)."""

    normal: List[int] = Field(description="Primitive integer normal vector")
    offset: Union[int, str] = Field(description="Right-hand side; an integer, or a \"num/den\" string when fractional")

    @classmethod
    def from_halfspace(cls, halfspace: Halfspace) -> "HalfspaceModel":
        offset = halfspace.offset
        return cls(
            normal=list(halfspace.normal),
            offset=int(offset) if offset.denominator == 1 else format_rational(offset),
        )


class PolytopeModel(BaseModel):
    """Exact V- and H-representation of a lattice polytope."""

    ambient_dim: int = Field(description="Dimension of the ambient space")
    dim: int = Field(description="Affine dimension")
    vertices: List[List[str]] = Field(description="Vertices as exact rational strings")
    facets: List[HalfspaceModel] = Field(default=[], description="Canonical facet inequalities")
    equalities: List[HalfspaceModel] = Field(default=[], description="Equalities of the affine hull")
    f_vector: Optional[List[int]] = Field(default=None, description="Face numbers f_0, …, f_{dim−1}")

    @classmethod
    def from_polytope(cls, polytope: LatticePolytope, f_vector: Optional[List[int]] = None) -> "PolytopeModel":
        return cls(
            ambient_dim=polytope.ambient_dim,
            dim=polytope.dim,
            vertices=[[format_rational(x) for x in v] for v in polytope.vertices],
            facets=[HalfspaceModel.from_halfspace(f) for f in polytope.facets or ()],
            equalities=[HalfspaceModel.from_halfspace(e) for e in polytope.equalities or ()],
            f_vector=f_vector,
        )


class BinomialModel(BaseModel):
    """t^plus − t^minus."""

    plus: List[int] = Field(description="Exponent vector of the first term")
    minus: List[int] = Field(description="Exponent vector of the second term")
    text: str = Field(description="Human-readable form")

    @classmethod
    def from_binomial(cls, binomial: Binomial) -> "BinomialModel":
        return cls(plus=list(binomial.plus), minus=list(binomial.minus), text=str(binomial))


class GroebnerBasisModel(BaseModel):
    weight: Optional[List[str]] = Field(default=None, description="Weight vector; null for plain grevlex")
    binomials: List[BinomialModel] = Field(description="Basis elements, leading term first")
    reduced: bool = Field(description="Whether the basis is reduced")

    @classmethod
    def from_basis(cls, basis: GroebnerBasis) -> "GroebnerBasisModel":
        weight = basis.order.weight
        return cls(
            weight=None if weight is None else [format_rational(w) for w in weight],
            binomials=[BinomialModel.from_binomial(b) for b in basis.binomials],
            reduced=basis.reduced,
        )


class BinomialSetModel(BaseModel):
    """An unordered binomial set such as a Graver basis or UGB."""

    kind: Literal["graver", "ugb"] = Field(description="Which set this is")
    certified: Optional[bool] = Field(default=None, description="False when elements were found at the degree bound")
    degree_census: Dict[int, int] = Field(description="Number of elements per degree")
    binomials: List[BinomialModel] = Field(description="Elements with canonical sign")


class CodeModel(BaseModel):
    n: int = Field(description="Number of neurons")
    words: List[str] = Field(description="Codewords as bit strings, zero word first")

    @classmethod
    def from_code(cls, code: NeuralCode) -> "CodeModel":
        return cls(n=code.n, words=["".join(str(b) for b in word) for word in code.words])


class InitialIdealModel(BaseModel):
    vertex: List[str] = Field(description="State polytope vertex")
    weight: List[int] = Field(description="Integer weight selecting the vertex")
    generators: List[List[int]] = Field(description="Minimal generators of the initial ideal")


class StatePolytopeModel(BaseModel):
    method: Literal["alg35", "fibers"] = Field(description="Construction used")
    polytope: PolytopeModel
    initial_ideals: List[InitialIdealModel] = Field(default=[], description="Vertex to initial ideal table")

    @classmethod
    def from_result(cls, result: StatePolytopeResult, f_vector: Optional[List[int]] = None) -> "StatePolytopeModel":
        return cls(
            method="alg35",
            polytope=PolytopeModel.from_polytope(result.polytope, f_vector),
            initial_ideals=[
                InitialIdealModel(
                    vertex=[format_rational(x) for x in entry.vertex],
                    weight=list(entry.weight),
                    generators=[list(g) for g in entry.ideal.sorted_generators()],
                )
                for entry in result.vertices
            ],
        )


class RemovalStepModel(BaseModel):
    label: int = Field(description="Removed curve")
    pierced_set: List[int] = Field(description="Curves the removed curve pierces")
    zone: List[int] = Field(description="Background zone witnessing the piercing")


class PiercingModel(BaseModel):
    pierced: bool = Field(description="Whether the description is k-inductively pierced")
    k: int = Field(description="Piercing bound")
    removal: List[RemovalStepModel] = Field(default=[], description="Removal certificate in order")

    @classmethod
    def from_certificate(cls, certificate: PiercingCertificate) -> "PiercingModel":
        return cls(
            pierced=certificate.pierced,
            k=certificate.k,
            removal=[
                RemovalStepModel(label=w.pierced_label, pierced_set=sorted(w.pierced_set), zone=sorted(w.background_zone))
                for w in certificate.removal
            ],
        )


class NestedSetsModel(BaseModel):
    n: int = Field(description="Star size; the building set is Î_n")
    count: int = Field(description="Number of maximal nested sets")
    nested_sets: List[List[List[int]]] = Field(description="Maximal nested sets as lists of sorted members")

    @classmethod
    def from_nested_sets(cls, n: int, nested: List[NestedSet]) -> "NestedSetsModel":
        return cls(n=n, count=len(nested), nested_sets=[[sorted(m) for m in N] for N in nested])


class ConjectureRowModel(BaseModel):
    k: int = Field(description="Face dimension")
    computed: Optional[int] = Field(default=None, description="Computed face number f_k")
    conjectured: int = Field(description="binom(n−1,k)·binom(2(n−1),n−1)")
    delannoy: int = Field(description="Delannoy paths to (n−1,n−1) with k diagonal steps")
    matches: bool = Field(description="Computed equals conjectured")

    @classmethod
    def from_row(cls, row: ConjectureRow) -> "ConjectureRowModel":
        return cls(k=row.k, computed=row.computed, conjectured=row.conjectured,
                   delannoy=row.delannoy, matches=row.matches)


class VerificationReport(BaseModel):
    """One harness check."""

    check_id: str = Field(description="Two-digit check identifier")
    anchor: str = Field(description="Result the check reproduces")
    statement: str = Field(description="What was checked")
    status: Literal["pass", "fail", "evidence-only", "refused"] = Field(description="Outcome")
    values: Dict[str, Any] = Field(default={}, description="Computed values")
    elapsed: float = Field(default=0.0, description="Wall-clock seconds")


class ErrorResponse(BaseModel):
    """Error response model."""

    success: bool = False
    error: str = Field(description="Error message")
    details: Optional[str] = Field(default=None, description="Additional error details")
