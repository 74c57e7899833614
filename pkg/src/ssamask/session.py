"""Stateful analyst sessions over the masking workflow.

A session walks loaded -> decomposed -> grouped -> previewed -> exported,
with backward resets when upstream parameters change. Mutations carry the
revision they were based on (optimistic concurrency) and are serialized
per session; views are read-only and echo the revision they were computed
against. Sessions live in memory: this is a desk-scale analyst instrument.
"""

import json
import secrets
import threading

from . import ssa, textio
from .errors import (
    ParameterError,
    StaleRevisionError,
    StateError,
    UnknownSessionError,
)
from .masking import MaskPlan, evaluate_utility, mask_signal
from .microdata import apply_modified_signal, build_quantity_signal
from .ssa import Grouping

STAGES = ("loaded", "decomposed", "grouped", "previewed", "exported")


def _stage_at_least(stage, minimum):
    return STAGES.index(stage) >= STAGES.index(minimum)


class Session:
    def __init__(self, session_id, signal, microfile=None, group=None):
        self.id = session_id
        self.signal = signal
        self.microfile = microfile
        self.group = group
        self.revision = 1
        self.stage = "loaded"
        self.window_length = ssa.default_window_length(len(signal))
        self.grouping = None
        self.trend_spec = None
        self.preview = None  # (masked, components, diagnostics, utility)
        self.lock = threading.Lock()
        self._decompose()

    def _decompose(self):
        trajectory = ssa.embed(self.signal.series, self.window_length)
        self.decomposition = ssa.decompose(trajectory)

    # -- mutations ---------------------------------------------------------

    def _check_revision(self, revision):
        if revision != self.revision:
            raise StaleRevisionError(
                f"mutation based on revision {revision}, "
                f"session is at {self.revision}",
                expected=self.revision,
                got=revision,
            )

    def set_window(self, revision, window_length):
        with self.lock:
            self._check_revision(revision)
            previous = self.window_length
            self.window_length = int(window_length)
            try:
                self._decompose()
            except Exception:
                self.window_length = previous
                self._decompose()
                raise
            self.grouping = None
            self.trend_spec = None
            self.preview = None
            self.stage = "decomposed"
            self.revision += 1
            return self.view()

    def set_grouping(self, revision, subsets, trend_subset=None):
        with self.lock:
            self._check_revision(revision)
            if not _stage_at_least(self.stage, "decomposed"):
                raise StateError(
                    "set the window (decompose) before grouping eigentriples"
                )
            trend_index = None if trend_subset is None else trend_subset - 1
            grouping = Grouping(
                subsets=tuple(tuple(s) for s in subsets),
                trend_index=trend_index,
            )
            grouping.validate_against(self.decomposition.effective_rank)
            self.grouping = grouping
            self.preview = None
            self.stage = "grouped"
            self.revision += 1
            return self.view()

    def set_trend(self, revision, trend_spec):
        with self.lock:
            self._check_revision(revision)
            if not _stage_at_least(self.stage, "decomposed"):
                raise StateError(
                    "set the window (decompose) before shaping the trend"
                )
            self.trend_spec = trend_spec
            self.preview = None
            if self.grouping is not None:
                self.stage = "grouped"
            self.revision += 1
            return self.view()

    # -- views -------------------------------------------------------------

    def _require(self, condition, message):
        if not condition:
            raise StateError(message)

    def _plan(self):
        self._require(
            self.grouping is not None and self.grouping.trend_index is not None,
            "preview needs a grouping with a designated trend subset",
        )
        self._require(
            self.trend_spec is not None,
            "preview needs a replacement trend specification",
        )
        return MaskPlan(
            window_length=self.window_length,
            grouping=self.grouping,
            trend_spec=self.trend_spec,
        )

    def view_spectrum(self):
        with self.lock:
            self._require(
                _stage_at_least(self.stage, "decomposed"),
                "spectrum needs a decomposition; set the window first",
            )
            d = self.decomposition
            return {
                "revision": self.revision,
                "singular_values": [float(v) for v in d.singular_values],
                "eigenvalues": [float(v) for v in d.eigenvalues],
                "effective_rank": d.effective_rank,
                "window_length": self.window_length,
            }

    def view_eigenvector(self, index):
        with self.lock:
            self._require(
                _stage_at_least(self.stage, "decomposed"),
                "eigenvectors need a decomposition; set the window first",
            )
            d = self.decomposition
            if not 1 <= index <= d.effective_rank:
                raise ParameterError(
                    f"eigentriple index {index} outside [1, {d.effective_rank}]"
                )
            single = ssa.reconstruct(
                d, Grouping(subsets=((index,),)), labels=(f"eigentriple-{index}",)
            )
            return {
                "revision": self.revision,
                "index": index,
                "singular_value": float(d.singular_values[index - 1]),
                "vector": [float(v) for v in d.left_vectors[:, index - 1]],
                "reconstruction": [
                    float(v) for v in single.components[0].values
                ],
            }

    def view_components(self):
        with self.lock:
            self._require(
                self.grouping is not None,
                "components need a grouping; set one first",
            )
            components = ssa.reconstruct(self.decomposition, self.grouping)
            return {
                "revision": self.revision,
                "components": [
                    {"label": c.label, "values": [float(v) for v in c.values]}
                    for c in components
                ],
                "trend_subset": (
                    None
                    if self.grouping.trend_index is None
                    else self.grouping.trend_index + 1
                ),
            }

    def view_advisory(self, pair_tolerance=0.1, noise_floor=1e-3):
        with self.lock:
            self._require(
                _stage_at_least(self.stage, "decomposed"),
                "advisory needs a decomposition; set the window first",
            )
            advice = ssa.advise_grouping(
                self.decomposition,
                pair_tolerance=pair_tolerance,
                noise_floor=noise_floor,
            )
            return {
                "revision": self.revision,
                "periodic_pairs": [list(p) for p in advice.periodic_pairs],
                "noise_cutoff": advice.noise_cutoff,
                "trend_candidates": list(advice.trend_candidates),
            }

    def view_preview(self):
        with self.lock:
            plan = self._plan()
            if self.preview is None or self.preview[0] != self.revision:
                masked, components, diagnostics = mask_signal(
                    self.signal, plan, decomposition=self.decomposition
                )
                utility = evaluate_utility(self.signal, masked, plan)
                self.preview = (
                    self.revision,
                    masked,
                    components,
                    diagnostics,
                    utility,
                )
                if self.stage in ("grouped",):
                    self.stage = "previewed"
            _, masked, components, diagnostics, utility = self.preview
            return {
                "revision": self.revision,
                "masked": [int(v) for v in masked.counts],
                "original": [int(v) for v in self.signal.counts],
                "clamped_positions": diagnostics["clamped_positions"],
                "replacement_trend": [
                    float(v) for v in diagnostics["replacement_trend"]
                ],
                "utility": utility.to_dict(),
            }

    # -- export ------------------------------------------------------------

    def export(self, what, seed=None):
        with self.lock:
            self._require(
                self.preview is not None
                and self.preview[0] == self.revision
                and _stage_at_least(self.stage, "previewed"),
                "export needs a preview; fetch the preview view first",
            )
            _, masked, components, diagnostics, utility = self.preview
            plan = self._plan()
            if what == "masked-signal":
                content = textio.format_signal(
                    masked, provenance=mask_provenance(plan)
                )
                document = {
                    "filename": "masked_signal.txt",
                    "content_type": "text/plain",
                    "content": content,
                }
            elif what == "microfile":
                self._require(
                    self.microfile is not None and self.group is not None,
                    "microfile export needs a backing microfile and group",
                )
                if seed is None:
                    raise ParameterError("microfile export needs a seed")
                import io as _io

                from .microdata import save_microfile

                modified = apply_modified_signal(
                    self.microfile, self.group, masked, seed=seed
                )
                buffer = _io.StringIO()
                save_microfile(modified, buffer)
                document = {
                    "filename": "modified_microfile.csv",
                    "content_type": "text/csv",
                    "content": buffer.getvalue(),
                }
            elif what == "report":
                document = {
                    "filename": "session_report.json",
                    "content_type": "application/json",
                    "content": json.dumps(self._report(utility, diagnostics),
                                          indent=2, sort_keys=True) + "\n",
                }
            else:
                raise ParameterError(
                    f"unknown export kind {what!r}; expected 'masked-signal', "
                    "'microfile', or 'report'"
                )
            self.stage = "exported"
            return document

    def _report(self, utility, diagnostics):
        return {
            "session": self.id,
            "revision": self.revision,
            "label": self.signal.series.label,
            "window_length": self.window_length,
            "grouping": textio.format_grouping(self.grouping),
            "trend_subset": self.grouping.trend_index + 1,
            "trend_spec": {
                "mode": self.trend_spec.mode,
                "values": self.trend_spec.values,
                "cap": self.trend_spec.cap,
                "half_width": self.trend_spec.half_width,
                "factor": self.trend_spec.factor,
            },
            "clamped_positions": diagnostics["clamped_positions"],
            "utility": utility.to_dict(),
        }

    def view(self):
        return {
            "id": self.id,
            "revision": self.revision,
            "stage": self.stage,
            "label": self.signal.series.label,
            "n": len(self.signal),
            "window_length": self.window_length,
            "grouping": (
                None
                if self.grouping is None
                else {
                    "subsets": [list(s) for s in self.grouping.subsets],
                    "trend_subset": (
                        None
                        if self.grouping.trend_index is None
                        else self.grouping.trend_index + 1
                    ),
                }
            ),
            "trend": (
                None
                if self.trend_spec is None
                else {"mode": self.trend_spec.mode}
            ),
            "has_preview": self.preview is not None
            and self.preview[0] == self.revision,
            "has_microfile": self.microfile is not None,
        }


def mask_provenance(plan):
    """Provenance string shared by CLI and session exports (byte equality)."""
    return (
        f"window={plan.window_length} "
        f"grouping={textio.format_grouping(plan.grouping)} "
        f"trend={plan.trend_spec.mode}"
    )


class SessionStore:
    """In-memory session registry; thread-safe."""

    def __init__(self):
        self._sessions = {}
        self._lock = threading.Lock()

    def create(self, signal, microfile=None, group=None):
        session_id = secrets.token_hex(8)
        session = Session(session_id, signal, microfile=microfile, group=group)
        with self._lock:
            self._sessions[session_id] = session
        return session

    def create_from_microfile(self, microfile, group, label=None):
        signal = build_quantity_signal(microfile, group, label=label)
        return self.create(signal, microfile=microfile, group=group)

    def get(self, session_id):
        with self._lock:
            session = self._sessions.get(session_id)
        if session is None:
            raise UnknownSessionError(f"no session {session_id!r}")
        return session
