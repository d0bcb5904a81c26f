"""Small reconstructed example networks with their known verdicts.

The ladders realize the padding chains with one to several pads: pad vertex
``x_k`` feeds colliders ``y_k`` and ``y_{k+1}``, every collider feeds ``u``,
and the last pad reaches the terminal. ``y_1`` is the source itself.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .graph import Network


def ladder(ell: int, terminals=("d",)) -> Network:
    """Source ``s``, cut vertex ``u``, pads ``x1..x{ell}`` and colliders ``y2..y{ell}``."""
    if ell < 1:
        raise ValueError("ladder needs at least one pad")
    ys = ["s"] + [f"y{k}" for k in range(2, ell + 1)]
    xs = [f"x{k}" for k in range(1, ell + 1)]
    edges = [("x1", "s"), ("s", "u")]
    for k in range(1, ell):
        edges += [(xs[k - 1], ys[k]), (xs[k], ys[k]), (ys[k], "u")]
    for d in terminals:
        edges += [("u", d), (xs[-1], d)]
    vertices = xs + ys + ["u", *terminals]
    return Network(vertices, edges, terminals)


def two_fan() -> Network:
    return Network(
        ["s1", "s2", "u1", "u2", "d1", "d2"],
        [("s1", "u1"), ("u1", "d1"), ("u1", "d2"), ("s2", "u2"), ("u2", "d1"), ("u2", "d2")],
        ["d1", "d2"],
    )


@dataclass(frozen=True)
class Demo:
    name: str
    network: Network
    sources: tuple  # multicast sources to try
    multicast_feasible: dict  # source -> expected verdict
    keycast_feasible: bool
    blocking_cuts: dict = field(default_factory=dict)  # source -> expected witness
    key: str | None = None  # expected key expression from synth_keycast
    second_source: str | None = None  # extra bit source for the extension
    note: str = ""


def _ladder_demo(name, ell, terminals=("d",), second=None, note=""):
    return Demo(
        name=name,
        network=ladder(ell, terminals),
        sources=("s",),
        multicast_feasible={"s": True},
        keycast_feasible=True,
        second_source=second,
        note=note,
    )


DEMOS = {
    "fig1a": _ladder_demo("fig1a", 1, note="one pad vertex linked to both s and d"),
    "fig1b": _ladder_demo("fig1b", 2, note="two chained pads"),
    "fig1c": _ladder_demo("fig1c", 3, note="u receives m+a1, a1+a2, a2+a3"),
    "fig1d": _ladder_demo(
        "fig1d", 4, ("d1", "d2"), second="u", note="two terminals; extra bit m' from u"
    ),
    "fig1e": Demo(
        name="fig1e",
        network=two_fan(),
        sources=("s1", "s2"),
        multicast_feasible={"s1": False, "s2": False},
        keycast_feasible=True,
        blocking_cuts={"s1": "u1", "s2": "u2"},
        key="m_1 + m_2",
        note="no single unprotected cut separates both source-terminal pairs",
    ),
}
