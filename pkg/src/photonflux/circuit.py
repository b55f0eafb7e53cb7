"""Single-photon pulse propagation through a feed-forward optical netlist.

A netlist wires one normalized source through phase shifters, beam
splitters, dielectric segments, interfaces and mirrors to a set of detector
ports.  Each port carries the (unnormalized) spectral amplitude of the pulse
that reaches it: dispersion and loss stay frequency-resolved, and the
probability at a port is simply its photon number.  A per-element ledger
tracks number in, number out and what was absorbed.
"""

import json
from dataclasses import dataclass

import numpy as np

from .errors import NetlistError, PortError
from . import optics
from .optics import (
    BeamSplitter,
    DielectricInterface,
    ElementSpec,
    Medium,
    MediumSegment,
    Mirror,
    PhaseShifter,
)
from .spectral import KGrid1D, SpectralAmplitude, make_gaussian_state, photon_number
from .units import NATURAL, UnitsConfig

CONSERVATION_TOL = 1e-9

_ARITY = {
    PhaseShifter: (1, 1),
    BeamSplitter: (2, 2),
    MediumSegment: (1, 1),
    DielectricInterface: (1, 2),
    Mirror: (1, 1),
}


@dataclass(frozen=True)
class Element:
    id: str
    spec: ElementSpec
    inputs: tuple
    outputs: tuple


@dataclass(frozen=True)
class Netlist:
    """Feed-forward wiring of one source to detectors.

    ``vacuum_ports`` name the empty inputs (a beam splitter's unused arm);
    they behave like produced ports carrying zero amplitude.
    """

    elements: tuple
    source_port: str
    source_state: SpectralAmplitude
    detectors: tuple
    vacuum_ports: tuple = ()


@dataclass(frozen=True)
class PortRecord:
    """Amplitude-split view of one output port.

    ``path_amplitude`` is sqrt of the carried photon number (relative phases
    between ports live in the spectra themselves, where frequency-resolved
    elements put them); ``spectral`` is the normalized pulse shape, or None
    for an empty port.
    """

    path_amplitude: complex
    spectral: SpectralAmplitude | None
    delay: float

    @property
    def probability(self) -> float:
        return float(abs(self.path_amplitude) ** 2)


@dataclass(frozen=True)
class PulseState:
    ports: dict
    absorbed: float

    def probability(self, port: str) -> float:
        if port not in self.ports:
            raise PortError(f"unknown port {port!r}")
        return self.ports[port].probability

    def total_probability(self) -> float:
        return float(sum(rec.probability for rec in self.ports.values()))


@dataclass(frozen=True)
class LedgerRow:
    element_id: str
    number_in: float
    number_out: float
    absorbed: float


@dataclass(frozen=True)
class Ledger:
    rows: tuple

    def total_absorbed(self) -> float:
        return float(sum(row.absorbed for row in self.rows))


def validate(netlist: Netlist) -> list:
    """Collect wiring violations; an empty list means the netlist is runnable."""
    violations = []
    produced = {netlist.source_port, *netlist.vacuum_ports}
    if netlist.source_port in netlist.vacuum_ports:
        violations.append("source port is also declared as vacuum")
    ids = [el.id for el in netlist.elements]
    if len(set(ids)) != len(ids):
        violations.append("duplicate element ids")
    consumed = set()

    for el in netlist.elements:
        arity = _ARITY.get(type(el.spec))
        if arity is None:
            violations.append(f"element {el.id}: unsupported kind {type(el.spec).__name__}")
            continue
        want_in, want_out = arity
        if len(el.inputs) != want_in:
            violations.append(
                f"element {el.id}: expected {want_in} input(s), got {len(el.inputs)}"
            )
        if len(el.outputs) != want_out:
            violations.append(
                f"element {el.id}: expected {want_out} output(s), got {len(el.outputs)}"
            )
        for port in el.outputs:
            if port in produced:
                violations.append(f"port {port!r} produced more than once")
            produced.add(port)
        if isinstance(el.spec, DielectricInterface) and complex(el.spec.n_in).imag != 0.0:
            violations.append(
                f"element {el.id}: interface entered from a lossy medium"
            )

    for el in netlist.elements:
        for port in el.inputs:
            if port in consumed:
                violations.append(f"port {port!r} feeds more than one input")
            consumed.add(port)
            if port not in produced:
                violations.append(f"element {el.id}: input port {port!r} is never produced")

    for port in netlist.detectors:
        if port in consumed:
            violations.append(f"detector port {port!r} also feeds an element")
        if port not in produced:
            violations.append(f"detector port {port!r} is never produced")
        consumed.add(port)

    if len(set(netlist.detectors)) != len(netlist.detectors):
        violations.append("duplicate detector ports")
    for port in produced - consumed:
        violations.append(f"port {port!r} is produced but never consumed")

    if _topological_order(netlist) is None:
        violations.append("wiring contains a cycle")
    return violations


def _topological_order(netlist: Netlist):
    """Kahn's algorithm over elements; None if the wiring has a cycle."""
    producer = {netlist.source_port: None}
    for el in netlist.elements:
        for port in el.outputs:
            producer.setdefault(port, el.id)
    deps = {}
    for el in netlist.elements:
        deps[el.id] = {
            producer[p] for p in el.inputs if producer.get(p) is not None
        }
    order = []
    ready = sorted(eid for eid, d in deps.items() if not d)
    remaining = {eid: set(d) for eid, d in deps.items()}
    while ready:
        eid = ready.pop(0)
        order.append(eid)
        for other, d in remaining.items():
            if eid in d:
                d.discard(eid)
                if not d and other not in order and other not in ready:
                    ready.append(other)
        ready.sort()
    if len(order) != len(netlist.elements):
        return None
    return order


def run_circuit(
    netlist: Netlist, units: UnitsConfig = NATURAL, paper_convention: bool = False
) -> tuple:
    """Propagate the source pulse to every detector port.

    Elements are applied in topological order; beam splitters combine their
    two input spectra linearly, media and interfaces act bin by bin.  The
    returned ledger satisfies number_in = number_out + absorbed per element
    (exactly, by construction of the rows).  With ``paper_convention``
    interfaces use the non-conserving literal Fresnel pair, so end-to-end
    conservation is expected to fail by the quantified defect.
    """
    violations = validate(netlist)
    if violations:
        raise NetlistError("; ".join(violations))
    n_src = photon_number(netlist.source_state)
    if abs(n_src - 1.0) > 1e-9:
        raise NetlistError(f"source photon number {n_src:.12g} is not 1")

    order = _topological_order(netlist)
    by_id = {el.id: el for el in netlist.elements}
    grid = netlist.source_state.grid
    zeros = np.zeros(grid.n, dtype=complex)

    # live map: port -> (amplitude array, accumulated delay)
    live = {netlist.source_port: (netlist.source_state.c.copy(), 0.0)}
    rows = []
    absorbing_rows = []

    def number_of(arr) -> float:
        return float(np.sum(np.abs(arr) ** 2) * grid.dk / (2.0 * np.pi))

    for eid in order:
        el = by_id[eid]
        ins = [live.pop(p, (zeros, 0.0)) for p in el.inputs]
        n_in = sum(number_of(arr) for arr, _ in ins)
        spec = el.spec

        if isinstance(spec, PhaseShifter):
            arr, delay = ins[0]
            outs = [(arr * np.exp(1j * spec.phi), delay)]
        elif isinstance(spec, Mirror):
            arr, delay = ins[0]
            outs = [(arr * spec.r, delay)]
        elif isinstance(spec, MediumSegment):
            arr, delay = ins[0]
            omega = units.c * grid.k
            n = np.asarray(spec.medium.index(omega))
            transfer = np.exp((1j * n.real - n.imag) * omega * spec.length / units.c)
            group_delay = _group_delay(arr, n.real, spec.length, units)
            outs = [(arr * transfer, delay + group_delay)]
        elif isinstance(spec, DielectricInterface):
            arr, delay = ins[0]
            n1 = complex(spec.n_in)
            n2 = complex(spec.n_out)
            r_amp, t_amp = optics.fresnel_interface(n1, n2, paper_convention)
            # flux-normalized transmission so |amplitude|^2 is a probability
            t_flux = t_amp * np.sqrt(n2.real / n1.real)
            outs = [(arr * t_flux, delay), (arr * r_amp, delay)]
        elif isinstance(spec, BeamSplitter):
            (a0, d0), (a1, d1) = ins
            s = spec.scattering
            out0 = s[0, 0] * a0 + s[0, 1] * a1
            out1 = s[1, 0] * a0 + s[1, 1] * a1
            outs = [(out0, _merge_delay(out0, (a0, d0), (a1, d1), number_of)),
                    (out1, _merge_delay(out1, (a0, d0), (a1, d1), number_of))]
        else:  # pragma: no cover
            raise NetlistError(f"unsupported element kind {type(spec).__name__}")

        n_out = sum(number_of(arr) for arr, _ in outs)
        rows.append(LedgerRow(eid, n_in, n_out, n_in - n_out))
        if isinstance(spec, MediumSegment):
            absorbing_rows.append(n_in - n_out)
        for port, out in zip(el.outputs, outs):
            live[port] = out

    ports = {}
    detected = 0.0
    for port in netlist.detectors:
        arr, delay = live.pop(port, (zeros, 0.0))
        n = number_of(arr)
        detected += n
        if n > 0.0:
            spectral = SpectralAmplitude(
                grid=grid, helicity=netlist.source_state.helicity, c=arr / np.sqrt(n)
            )
        else:
            spectral = None
        ports[port] = PortRecord(
            path_amplitude=complex(np.sqrt(n)), spectral=spectral, delay=delay
        )
    # Only media absorb.  Unitary elements carry (in - out) ~ 0 in their
    # ledger rows under the default convention; with paper_convention an
    # interface row exposes its conservation defect there instead of having
    # it silently balanced into "absorbed".
    pulse = PulseState(ports=ports, absorbed=float(sum(absorbing_rows)))
    return pulse, Ledger(rows=tuple(rows))


def _group_delay(arr, n_real, length, units) -> float:
    """Centroid-weighted n' L / c; exact for dispersionless media."""
    weight = np.abs(arr) ** 2
    total = weight.sum()
    if total == 0.0:
        return 0.0
    n_eff = float(np.sum(weight * n_real) / total)
    return n_eff * length / units.c


def _merge_delay(out, in0, in1, number_of) -> float:
    a0, d0 = in0
    a1, d1 = in1
    w0, w1 = number_of(a0), number_of(a1)
    if w0 + w1 == 0.0:
        return 0.0
    return (w0 * d0 + w1 * d1) / (w0 + w1)


def coincidence_probability(pulse: PulseState, port_a: str, port_b: str) -> float:
    """Joint two-click probability: identically zero in the one-photon sector.

    A single excitation has no |1,1> component over any pair of output
    ports, so this returns exactly 0.0 after validating the port names.
    """
    if port_a == port_b:
        raise PortError("coincidence needs two distinct detector ports")
    for port in (port_a, port_b):
        if port not in pulse.ports:
            raise PortError(f"unknown detector port {port!r}")
    return 0.0


def outcome_probabilities(pulse: PulseState) -> dict:
    probs = {port: rec.probability for port, rec in pulse.ports.items()}
    probs["absorbed"] = pulse.absorbed
    return probs


def sample_outcomes(pulse: PulseState, seed: int, n_samples: int) -> dict:
    """Seeded detection statistics over {detector ports} + {'absorbed'}.

    Each draw collapses the photon to the zero-photon record; outcomes are
    reported as counts.  Deterministic for a fixed seed.
    """
    probs = outcome_probabilities(pulse)
    labels = sorted(probs)
    weights = np.array([max(probs[lab], 0.0) for lab in labels])
    total = weights.sum()
    if total <= 0.0:
        raise PortError("no outcome carries positive probability")
    rng = np.random.default_rng(seed)
    draws = rng.choice(len(labels), size=n_samples, p=weights / total)
    counts = np.bincount(draws, minlength=len(labels))
    return {lab: int(cnt) for lab, cnt in zip(labels, counts)}


def detect_sample(pulse: PulseState, seed: int) -> str:
    """One seeded detection outcome (a detector port name or 'absorbed')."""
    counts = sample_outcomes(pulse, seed, 1)
    return next(lab for lab, cnt in counts.items() if cnt == 1)


def mach_zehnder_netlist(source_state: SpectralAmplitude, phi: float) -> Netlist:
    """Balanced two-splitter interferometer with a phase phi in one arm.

    Detector ``d_bright`` sees probability cos^2(phi/2), ``d_dark`` the
    complement.
    """
    bs = BeamSplitter(t=1.0 / np.sqrt(2.0), r=1.0 / np.sqrt(2.0))
    elements = (
        Element("bs1", bs, inputs=("src", "vac"), outputs=("arm_a", "arm_b")),
        Element("phase", PhaseShifter(phi), inputs=("arm_a",), outputs=("arm_a_shift",)),
        Element("bs2", bs, inputs=("arm_a_shift", "arm_b"), outputs=("d_dark", "d_bright")),
    )
    return Netlist(
        elements=elements,
        source_port="src",
        source_state=source_state,
        detectors=("d_dark", "d_bright"),
        vacuum_ports=("vac",),
    )


def _spec_from_json(kind: str, params: dict) -> ElementSpec:
    if kind == "phase_shifter":
        return PhaseShifter(phi=float(params["phi"]))
    if kind == "beam_splitter":
        return BeamSplitter(t=_cplx(params["t"]), r=_cplx(params["r"]))
    if kind == "medium_segment":
        return MediumSegment(
            medium=Medium.constant(_cplx(params["chi"])), length=float(params["length"])
        )
    if kind == "interface":
        return DielectricInterface(n_in=_cplx(params["n_in"]), n_out=_cplx(params["n_out"]))
    if kind == "mirror":
        return Mirror(r=_cplx(params.get("r", 1.0)))
    raise NetlistError(f"unknown element kind {kind!r}")


def _cplx(value) -> complex:
    if isinstance(value, (list, tuple)):
        return complex(float(value[0]), float(value[1]))
    return complex(value)


def state_from_spec(spec: dict, grid: KGrid1D) -> SpectralAmplitude:
    """Build a source state from its JSON description."""
    kind = spec.get("kind", "gaussian")
    if kind == "gaussian":
        x0 = spec.get("x0")
        return make_gaussian_state(
            k0=float(spec["k0"]),
            sigma=float(spec["sigma"]),
            grid=grid,
            helicity=int(spec.get("helicity", +1)),
            x0=float(x0) if x0 is not None else None,
        )
    if kind == "zero":
        return SpectralAmplitude(
            grid=grid,
            helicity=int(spec.get("helicity", +1)),
            c=np.zeros(grid.n, dtype=complex),
        )
    if kind == "amplitude":
        return SpectralAmplitude.from_json(spec)
    raise NetlistError(f"unknown state kind {kind!r}")


def netlist_from_json(obj: dict, default_grid: KGrid1D | None = None) -> Netlist:
    """Parse the netlist JSON schema.

    Expected shape: {"grid": {...}?, "elements": [{"id", "kind", "params",
    "in", "out"}], "sources": [{"port", "state"}], "detectors": [...],
    "vacuum": [...]?}.  Exactly one source is required (single-photon
    sector).
    """
    if "grid" in obj:
        g = obj["grid"]
        grid = KGrid1D(n=int(g["N"]), dk=float(g["dk"]), area=float(g.get("area", 1.0)))
    elif default_grid is not None:
        grid = default_grid
    else:
        raise NetlistError("netlist JSON carries no grid and no default was given")

    sources = obj.get("sources", [])
    if len(sources) != 1:
        raise NetlistError(f"exactly one source required, got {len(sources)}")
    src = sources[0]
    state = state_from_spec(src["state"], grid)

    elements = []
    for entry in obj.get("elements", []):
        spec = _spec_from_json(entry["kind"], entry.get("params", {}))
        elements.append(
            Element(
                id=str(entry["id"]),
                spec=spec,
                inputs=tuple(entry.get("in", ())),
                outputs=tuple(entry.get("out", ())),
            )
        )
    return Netlist(
        elements=tuple(elements),
        source_port=str(src["port"]),
        source_state=state,
        detectors=tuple(obj.get("detectors", ())),
        vacuum_ports=tuple(obj.get("vacuum", ())),
    )


def load_netlist(path, default_grid: KGrid1D | None = None) -> Netlist:
    with open(path) as fh:
        return netlist_from_json(json.load(fh), default_grid)
