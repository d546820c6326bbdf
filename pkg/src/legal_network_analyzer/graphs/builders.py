"""
Hierarchy, reference, sequence, subsequence and quotient graphs of a snapshot
"""
import logging
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

import networkx as nx

from ..corpus.tokens import count_tokens
from ..errors import IntegrityError, MappingError, ParameterError
from ..models import ElementKind, ResolvedReference, Snapshot
from .merge import Selector, resolve_selector

logger = logging.getLogger(__name__)

META_ROOT = "__root__"
CONTAINMENT = "containment"
REFERENCE = "reference"
SEQUENCE = "sequence"
EDGE_TYPES = (CONTAINMENT, REFERENCE, SEQUENCE)

WeightFunction = Callable[[int], float]
DEFAULT_DECAY = 0.5


def default_weight(distance: int) -> float:
    """w(d) = 2^(-(d-2)/2); siblings (d = 2) weigh 1"""
    return 2.0 ** (-DEFAULT_DECAY * (distance - 2))


def distance_weight(decay: float = DEFAULT_DECAY) -> WeightFunction:
    """w(d) = 2^(-decay * (d-2)), decreasing in the hierarchy distance d"""
    if decay <= 0:
        raise ParameterError(f"Weight decay must be positive, got {decay}")
    if decay == DEFAULT_DECAY:
        return default_weight
    return lambda distance: 2.0 ** (-decay * (distance - 2))


def build_hierarchy(snapshot: Snapshot) -> nx.DiGraph:
    """Containment tree of all documents below one meta root at level -1"""
    graph = nx.DiGraph(snapshot=snapshot.label, year=snapshot.year, collection=snapshot.collection_id)
    graph.add_node(META_ROOT, kind="root", level=-1, citekey="", heading="", tokens=0, text="",
                   document="", parent=None, appendix=False)
    for doc in snapshot.documents:
        parents = {doc.root.id: META_ROOT}
        for element in doc.iter_nodes():
            graph.add_node(
                element.id,
                kind=element.kind.value,
                level=element.level,
                citekey=element.cite_key or "",
                heading=element.heading or "",
                tokens=0 if element.appendix else count_tokens(element.text),
                text=element.text,
                document=doc.key,
                parent=parents[element.id],
                appendix=element.appendix,
            )
            graph.add_edge(parents[element.id], element.id, edge_type=CONTAINMENT)
            for child in element.children:
                parents[child.id] = element.id
    return graph


def ancestors(hierarchy: nx.DiGraph, node: str) -> List[str]:
    """Path from a node up to and including the meta root"""
    path = [node]
    parent = hierarchy.nodes[node].get("parent")
    while parent is not None:
        path.append(parent)
        parent = hierarchy.nodes[parent].get("parent")
    return path


def hierarchy_distance(hierarchy: nx.DiGraph, a: str, b: str) -> int:
    """Undirected tree distance through the lowest common ancestor"""
    up_a = {node: depth for depth, node in enumerate(ancestors(hierarchy, a))}
    for depth_b, node in enumerate(ancestors(hierarchy, b)):
        if node in up_a:
            return up_a[node] + depth_b
    raise IntegrityError(f"Nodes {a!r} and {b!r} share no ancestor")


def _enclosing_seqitem(hierarchy: nx.DiGraph, node: str) -> Optional[str]:
    for candidate in ancestors(hierarchy, node):
        if hierarchy.nodes[candidate]["kind"] == ElementKind.SEQITEM.value:
            return candidate
    return None


def build_reference(hierarchy: nx.DiGraph, references: Iterable[ResolvedReference]) -> nx.MultiDiGraph:
    """Hierarchy arcs plus the cross-reference multiset between seqitems"""
    graph = nx.MultiDiGraph(**hierarchy.graph)
    graph.add_nodes_from(hierarchy.nodes(data=True))
    for u, v in hierarchy.edges():
        graph.add_edge(u, v, key=CONTAINMENT, edge_type=CONTAINMENT, weight=1.0, multiplicity=1)

    origins: Dict[Tuple[str, str], List[str]] = {}
    for reference in references:
        if reference.source_id not in hierarchy or reference.target_id not in hierarchy:
            raise IntegrityError(
                f"Reference {reference.source_id} -> {reference.target_id} leaves the snapshot"
            )
        if hierarchy.nodes[reference.target_id]["kind"] != ElementKind.SEQITEM.value:
            raise IntegrityError(f"Reference target {reference.target_id} is not a seqitem")
        source = _enclosing_seqitem(hierarchy, reference.source_id)
        if source is None:
            raise IntegrityError(f"Reference source {reference.source_id} lies outside any seqitem")
        origins.setdefault((source, reference.target_id), []).append(reference.source_id)

    for (u, v), sources in origins.items():
        graph.add_edge(u, v, key=REFERENCE, edge_type=REFERENCE, weight=1.0,
                       multiplicity=len(sources), origins=tuple(sources))
    return graph


def reference_multiplicity(graph: nx.MultiDiGraph) -> int:
    """Total multiplicity of reference arcs"""
    return sum(d["multiplicity"] for _, _, k, d in graph.edges(keys=True, data=True) if k == REFERENCE)


def _seqitems(graph: nx.MultiDiGraph) -> List[str]:
    """Seqitems in document order"""
    order = []
    stack = [META_ROOT]
    while stack:
        node = stack.pop()
        if graph.nodes[node]["kind"] == ElementKind.SEQITEM.value:
            order.append(node)
            continue
        children = [v for _, v, k in graph.out_edges(node, keys=True) if k == CONTAINMENT]
        stack.extend(reversed(children))
    return order


def _children(graph: nx.MultiDiGraph, node: str) -> List[str]:
    return [v for _, v, k in graph.out_edges(node, keys=True) if k == CONTAINMENT]


def _subtree(graph: nx.MultiDiGraph, node: str) -> List[str]:
    """Preorder subtree"""
    order, stack = [], [node]
    while stack:
        current = stack.pop()
        order.append(current)
        stack.extend(reversed(_children(graph, current)))
    return order


class _Unit:
    """A seqitem, or one top-level subseqitem, before merging"""

    def __init__(self, node: str, seqitem: str, elements: List[str], key: str, text: str, tokens: int):
        self.node = node
        self.seqitem = seqitem
        self.elements = elements
        self.key = key
        self.text = text
        self.tokens = tokens


def _unit_text(graph: nx.MultiDiGraph, elements: Sequence[str]) -> str:
    return " ".join(graph.nodes[e]["text"] for e in elements if graph.nodes[e]["text"])


def _sequence_units(graph: nx.MultiDiGraph) -> List[_Unit]:
    units = []
    for seqitem in _seqitems(graph):
        elements = _subtree(graph, seqitem)
        units.append(_Unit(
            seqitem, seqitem, elements, graph.nodes[seqitem]["citekey"],
            _unit_text(graph, elements), sum(graph.nodes[e]["tokens"] for e in elements),
        ))
    return units


def _subsequence_units(graph: nx.MultiDiGraph) -> List[_Unit]:
    units = []
    for seqitem in _seqitems(graph):
        data = graph.nodes[seqitem]
        children = _children(graph, seqitem)
        if not children:
            units.append(_Unit(seqitem, seqitem, [seqitem], data["citekey"], data["text"], data["tokens"]))
            continue
        for ordinal, child in enumerate(children, start=1):
            elements = _subtree(graph, child)
            if ordinal == 1:
                # the seqitem's own text opens its first subseqitem
                elements = [seqitem] + elements
            units.append(_Unit(
                child, seqitem, elements, f"{data['citekey']}.{ordinal}",
                _unit_text(graph, elements), sum(graph.nodes[e]["tokens"] for e in elements),
            ))
    return units


def _build_view(
    refgraph: nx.MultiDiGraph,
    units: List[_Unit],
    rho: str | Selector,
    w: WeightFunction,
    alpha: float,
    sequence_arcs: bool,
    view: str,
) -> nx.MultiDiGraph:
    if not 0 < alpha <= 1:
        raise ParameterError(f"alpha must lie in (0, 1], got {alpha}")
    w_max = w(2)
    if w_max <= 0:
        raise ParameterError(f"Weight function must be positive, w(2) = {w_max}")
    selector = resolve_selector(rho)
    rho_name = rho if isinstance(rho, str) else getattr(rho, "__name__", "custom")

    group_of: Dict[str, str] = {}
    for unit in units:
        if rho_name == "none":
            group_of[unit.node] = unit.node
            continue
        group = selector(refgraph, unit.seqitem)
        if group is None:
            raise MappingError(f"Merge condition {rho_name!r} undefined for {unit.seqitem}")
        group_of[unit.node] = group

    graph = nx.MultiDiGraph(
        **refgraph.graph, view=view, rho=rho_name, alpha=alpha, w_max=w_max,
    )
    graph.graph["hierarchy"] = refgraph
    element_node: Dict[str, str] = {}
    for unit in units:
        node = group_of[unit.node]
        for element in unit.elements:
            element_node.setdefault(element, node)
        if node not in graph:
            data = refgraph.nodes[unit.node]
            graph.add_node(
                node,
                kind=data["kind"] if node == unit.node else "merged",
                level=refgraph.nodes[node]["level"] if node in refgraph else data["level"],
                citekey=unit.key,
                heading=refgraph.nodes[node]["heading"] if node in refgraph else "",
                document=data["document"],
                tokens=0,
                text="",
                members=(),
                seqitems=(),
            )
        attrs = graph.nodes[node]
        attrs["tokens"] += unit.tokens
        attrs["text"] = f"{attrs['text']} {unit.text}".strip() if unit.text else attrs["text"]
        attrs["members"] = attrs["members"] + (unit.node,)
        if unit.seqitem not in attrs["seqitems"]:
            attrs["seqitems"] = attrs["seqitems"] + (unit.seqitem,)
    graph.graph["element_node"] = element_node

    if sequence_arcs:
        for before, after in zip(units, units[1:]):
            u, v = group_of[before.node], group_of[after.node]
            if u == v or graph.has_edge(u, v, key=SEQUENCE):
                continue
            weight = w(hierarchy_distance(refgraph, before.node, after.node))
            if weight <= 0:
                raise ParameterError(f"Weight function returned {weight} for {before.node} -> {after.node}")
            graph.add_edge(u, v, key=SEQUENCE, edge_type=SEQUENCE, weight=weight, multiplicity=1)
            graph.add_edge(v, u, key=SEQUENCE, edge_type=SEQUENCE, weight=weight, multiplicity=1)

    seqitem_first = {}
    for unit in units:
        seqitem_first.setdefault(unit.seqitem, unit.node)
    for s, t, key, data in refgraph.edges(keys=True, data=True):
        if key != REFERENCE:
            continue
        target = group_of[seqitem_first[t]]
        for origin in data["origins"]:
            source = element_node.get(origin, group_of[seqitem_first[s]])
            if graph.has_edge(source, target, key=REFERENCE):
                graph.edges[source, target, REFERENCE]["multiplicity"] += 1
            else:
                graph.add_edge(source, target, key=REFERENCE, edge_type=REFERENCE,
                               weight=alpha * w_max, multiplicity=1)

    logger.debug("%s %s graph: %d nodes, %d arcs", graph.graph.get("snapshot"), view,
                 graph.number_of_nodes(), graph.number_of_edges())
    return graph


def build_sequence(
    refgraph: nx.MultiDiGraph,
    rho: str | Selector = "none",
    w: WeightFunction = default_weight,
    alpha: float = 0.5,
    sequence_arcs: bool = True,
) -> nx.MultiDiGraph:
    """Seqitems merged under rho, joined by sequence arc pairs and projected references"""
    return _build_view(refgraph, _sequence_units(refgraph), rho, w, alpha, sequence_arcs, "sequence")


def build_subsequence(
    refgraph: nx.MultiDiGraph,
    rho: str | Selector = "none",
    w: WeightFunction = default_weight,
    alpha: float = 0.5,
    sequence_arcs: bool = True,
) -> nx.MultiDiGraph:
    """As build_sequence, with seqitems replaced by their subseqitems where they exist"""
    return _build_view(refgraph, _subsequence_units(refgraph), rho, w, alpha, sequence_arcs, "subsequence")


def quotient(
    graph: nx.Graph,
    selector: str | Selector,
    edge_types: Optional[Sequence[str]] = None,
) -> nx.DiGraph:
    """Quotient by the classes a selector induces; arc multiplicity counts crossing source arcs"""
    select = resolve_selector(selector)
    hierarchy = graph.graph.get("hierarchy", graph)
    classes: Dict[str, str] = {}
    result = nx.DiGraph(**{k: v for k, v in graph.graph.items() if k not in ("hierarchy", "element_node")})
    for node, data in graph.nodes(data=True):
        anchor = node if node in hierarchy else data["seqitems"][0]
        cls = select(hierarchy, anchor)
        if cls is None:
            raise MappingError(f"Selector undefined for node {node!r}")
        classes[node] = cls
        if cls not in result:
            result.add_node(cls, tokens=0, size=0, members=())
        attrs = result.nodes[cls]
        attrs["tokens"] += data.get("tokens", 0)
        attrs["size"] += 1
        attrs["members"] = attrs["members"] + (node,)

    if graph.is_multigraph():
        edges = ((u, v, k, d) for u, v, k, d in graph.edges(keys=True, data=True))
    else:
        edges = ((u, v, d.get("edge_type"), d) for u, v, d in graph.edges(data=True))
    for u, v, key, data in edges:
        if edge_types is not None and key not in edge_types:
            continue
        a, b = classes[u], classes[v]
        multiplicity = data.get("multiplicity", 1)
        if result.has_edge(a, b):
            result.edges[a, b]["multiplicity"] += multiplicity
        else:
            result.add_edge(a, b, multiplicity=multiplicity)
    return result
