"""
Strict pydantic schemas for the JSON input files.

Unknown keys are rejected. Schema errors and semantic errors both surface as
:class:`logpic.exceptions.InputError` carrying a JSON pointer into the file.

Example:
    >>> from logpic.schema import *  # NOQA
    >>> G = GraphSchema.model_validate({
    >>>     'vertices': ['a', {'id': 'b', 'weight': 1}],
    >>>     'edges': [{'id': 'e', 'halves': [['e0', 'a'], ['e1', 'b']]}],
    >>> }).build()
    >>> G.genus
    1
    >>> validate_document(GraphSchema, {'vertices': ['a'], 'edges': [], 'colour': 1})
    Traceback (most recent call last):
    ...
    logpic.exceptions.InputError: Extra inputs are not permitted (at /colour)
"""
from __future__ import annotations

import os
from typing import Any, TypeVar

import orjson
import ubelt as ub
from pydantic import BaseModel, ConfigDict, Field, ValidationError

from logpic.exceptions import InputError

SchemaT = TypeVar('SchemaT', bound=BaseModel)


class StrictSchema(BaseModel):
    model_config = ConfigDict(extra='forbid', populate_by_name=True)


class VertexSchema(StrictSchema):
    id: str
    weight: int = 0


class EdgeSchema(StrictSchema):
    id: str
    halves: tuple[tuple[str, str], tuple[str, str]]
    length: list[int] = Field(default_factory=lambda: [1])


class GraphSchema(StrictSchema):
    """
    ``{"vertices": [...], "edges": [{"id", "halves": [[h, v], [h, v]], "length"}]}``.
    A vertex may be given as a bare id string.
    """
    vertices: list[VertexSchema | str]
    edges: list[EdgeSchema] = Field(default_factory=list)

    def _graph(self):
        from logpic.graph import Edge, Multigraph, Vertex
        from logpic.monoids import MonoidElement
        verts = [Vertex(v) if isinstance(v, str) else Vertex(v.id, v.weight)
                 for v in self.vertices]
        edges = [Edge(e.id, e.halves, MonoidElement(tuple(e.length))) for e in self.edges]
        return Multigraph(verts, edges)

    def build(self):
        return self._graph()


class PointSchema(StrictSchema):
    id: str
    class_: list[int] = Field(default_factory=list, alias='class')


class ComponentSchema(StrictSchema):
    """
    ``{"genus": g, "group": [n1, ...], "points": [{"id", "class"} | id]}``.
    """
    genus: int = 0
    group: list[int] = Field(default_factory=list)
    points: list[PointSchema | str] = Field(default_factory=list)

    def build(self, location: str = ''):
        from logpic.components import AbelianGroup, ComponentModel
        group = AbelianGroup(tuple(self.group))
        points = {}
        for idx, p in enumerate(self.points):
            name, cls = (p, group.zero()) if isinstance(p, str) else (p.id, tuple(p.class_))
            if name in points:
                raise InputError(f'duplicate point {name!r}', f'{location}/points/{idx}')
            points[name] = cls
        try:
            return ComponentModel(genus=self.genus, group=group, points=points)
        except InputError as ex:
            raise InputError(ex.message, ex.location or location or None) from None


def _build_components(components: dict[str, ComponentSchema]) -> dict:
    return {k: c.build(f'/components/{k}') for k, c in components.items()}


class ComplexSchema(GraphSchema):
    """
    A graph plus ``components`` per vertex, ``attach`` from half-edge id to
    roster point, and ``marks`` as ``[[vertex, point], ...]``.
    """
    components: dict[str, ComponentSchema]
    attach: dict[str, str]
    marks: list[tuple[str, str]] = Field(default_factory=list)

    def build(self):
        from logpic.complexes import MetrizedComplex
        return MetrizedComplex(self._graph(), _build_components(self.components),
                               self.attach, self.marks)


class NodeSchema(StrictSchema):
    id: str
    branches: tuple[tuple[str, str], tuple[str, str]]
    length: list[int] = Field(default_factory=lambda: [1])


class CurveSchema(StrictSchema):
    """
    ``{"monoidRank": k, "components": {...}, "nodes": [...], "marks": [...]}``.
    """
    monoid_rank: int = Field(1, alias='monoidRank')
    components: dict[str, ComponentSchema]
    nodes: list[NodeSchema] = Field(default_factory=list)
    marks: list[tuple[str, str]] = Field(default_factory=list)

    def build(self):
        from logpic.logcurve import LogCurve, Node
        from logpic.monoids import MonoidElement
        nodes = [Node(n.id, n.branches, MonoidElement(tuple(n.length))) for n in self.nodes]
        return LogCurve(_build_components(self.components), nodes, self.marks,
                        self.monoid_rank)


class ClassSchema(StrictSchema):
    degree: int
    torsion: list[int] = Field(default_factory=list)


class BundleSchema(StrictSchema):
    """``{"classes": {comp: {"degree", "torsion"}}, "gluing": {node: int}}``."""
    classes: dict[str, ClassSchema] = Field(default_factory=dict)
    gluing: dict[str, int] = Field(default_factory=dict)

    def build(self, curve, torus: int = 1):
        from logpic.components import ComponentClass
        classes = {}
        for k, c in self.classes.items():
            if k not in curve.components:
                raise InputError(f'unknown component {k!r}', f'/classes/{k}')
            torsion = tuple(c.torsion) or curve.components[k].group.zero()
            classes[k] = ComponentClass(c.degree, torsion)
        return curve.bundle(classes, self.gluing, torus)


def error_location(ex: ValidationError) -> str:
    """JSON pointer of the first pydantic error."""
    errors = ex.errors()
    if not errors:
        return '/'
    loc = [str(p) for p in errors[0].get('loc', ()) if not _is_union_tag(p)]
    return '/' + '/'.join(loc)


def _is_union_tag(part) -> bool:
    # pydantic inserts the union member name into ``loc``
    return isinstance(part, str) and (part in {'str', 'VertexSchema', 'PointSchema'}
                                      or part.startswith('function-'))


def validate_document(schema: type[SchemaT], data: Any) -> SchemaT:
    try:
        return schema.model_validate(data)
    except ValidationError as ex:
        errors = ex.errors()
        msg = errors[0]['msg'] if errors else str(ex)
        raise InputError(msg, error_location(ex)) from None


def read_json(fpath: str | os.PathLike) -> Any:
    fpath = ub.Path(fpath)
    if not fpath.exists():
        raise InputError(f'no such file: {fpath}')
    try:
        return orjson.loads(fpath.read_bytes())
    except orjson.JSONDecodeError as ex:
        raise InputError(f'malformed JSON in {fpath}: {ex}', '/') from None


def load_graph(fpath):
    return validate_document(GraphSchema, read_json(fpath)).build()


def load_complex(fpath):
    return validate_document(ComplexSchema, read_json(fpath)).build()


def load_curve(fpath):
    return validate_document(CurveSchema, read_json(fpath)).build()


def load_graph_divisor(graph, data):
    """
    A divisor document is ``{vertex: coefficient}``.

    Example:
        >>> from logpic.schema import *  # NOQA
        >>> from logpic.graph import Multigraph
        >>> load_graph_divisor(Multigraph.demo('C3'), {'v1': 2}).coeffs
        (2, 0, 0)
    """
    from logpic.divisors import GraphDivisor
    if not isinstance(data, dict):
        data = read_json(data)
    if not isinstance(data, dict):
        raise InputError('a divisor must be a JSON object', '/')
    for v, c in data.items():
        if v not in graph.vertex_ids:
            raise InputError(f'unknown vertex {v!r}', f'/{v}')
        if not isinstance(c, int) or isinstance(c, bool):
            raise InputError(f'coefficient of {v!r} must be an integer', f'/{v}')
    return GraphDivisor.from_dict(graph, data)


def load_complex_divisor(C, data):
    """
    A complex divisor is ``{vertex: {point: multiplicity}}``; the class is
    returned.
    """
    if not isinstance(data, dict):
        data = read_json(data)
    if not isinstance(data, dict):
        raise InputError('a divisor must be a JSON object', '/')
    for v, local in data.items():
        if v not in C.components:
            raise InputError(f'unknown vertex {v!r}', f'/{v}')
        if not isinstance(local, dict):
            raise InputError('a local divisor must be an object', f'/{v}')
        for p in local:
            if p not in C.components[v].points:
                raise InputError(f'unknown point {p!r} on {v!r}', f'/{v}/{p}')
    return C.class_of(data)


def load_bundle(curve, data, torus: int = 1):
    if not isinstance(data, dict):
        data = read_json(data)
    return validate_document(BundleSchema, data).build(curve, torus)
