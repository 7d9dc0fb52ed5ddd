"""
Графы инцидентности: построение через networkx, экспорт в DOT через pydot,
поиск изоморфизма плоскостей (VF2).
"""
from typing import Any, Dict, Hashable, Iterable, Optional, Tuple

import networkx as nx
from networkx.algorithms import isomorphism
from loguru import logger

# Цвета вершин по типу
TYPE_COLORS = {0: "red", 1: "green", 2: "blue", "point": "black", "line": "gray"}


def incidence_graph(plane) -> nx.Graph:
    """Двудольный граф инцидентности: вершины ('point', P) и ('line', L)"""
    graph = nx.Graph()
    for point in plane.points:
        graph.add_node(("point", point), kind="point")
    for line in plane.lines:
        graph.add_node(("line", line), kind="line")
    for point, line in plane.incidences:
        graph.add_edge(("point", point), ("line", line))
    return graph


def typed_graph(vertices: Iterable[Hashable], types: Dict[Hashable, Any], edges: Iterable[Tuple[Hashable, Hashable]]) -> nx.Graph:
    """1-остов с атрибутом типа у вершин"""
    graph = nx.Graph()
    for v in vertices:
        graph.add_node(v, kind=types[v])
    graph.add_edges_from(edges)
    return graph


def to_dot(graph: nx.Graph, name: str = "G") -> str:
    """DOT-текст: вершины получают короткие имена, цвет задается типом"""
    order = sorted(graph.nodes, key=repr)
    index = {node: i for i, node in enumerate(order)}
    export = nx.Graph(name=name)
    for node in order:
        kind = graph.nodes[node].get("kind")
        prefix = kind[0] if isinstance(kind, str) else f"t{kind}"
        export.add_node(
            f"{prefix}{index[node]}",
            label=f'"{node!r}"',
            color=TYPE_COLORS.get(kind, "black"),
        )
    for u, v in sorted(graph.edges, key=lambda e: (index[e[0]], index[e[1]])):
        ku, kv = graph.nodes[u].get("kind"), graph.nodes[v].get("kind")
        pu = ku[0] if isinstance(ku, str) else f"t{ku}"
        pv = kv[0] if isinstance(kv, str) else f"t{kv}"
        export.add_edge(f"{pu}{index[u]}", f"{pv}{index[v]}")
    return nx.nx_pydot.to_pydot(export).to_string()


def plane_isomorphism(first, second) -> Optional[Tuple[Dict[Any, Any], Dict[Any, Any]]]:
    """Изоморфизм плоскостей, сохраняющий тип (точки в точки): биекции точек и прямых"""
    if len(first.points) != len(second.points) or len(first.incidences) != len(second.incidences):
        return None

    matcher = isomorphism.GraphMatcher(
        incidence_graph(first),
        incidence_graph(second),
        node_match=lambda a, b: a["kind"] == b["kind"],
    )
    if not matcher.is_isomorphic():
        logger.debug("Плоскости не изоморфны")
        return None

    mapping = matcher.mapping
    points = {p[1]: mapping[p][1] for p in mapping if p[0] == "point"}
    lines = {l[1]: mapping[l][1] for l in mapping if l[0] == "line"}
    return points, lines
