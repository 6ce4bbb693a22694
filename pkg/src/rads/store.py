"""File-backed incident store.

One directory per incident: versioned scenario documents, an append-only
audit log (one JSON object per line), stored evaluation reports, and a
small record file with reporter/status/evidence metadata.

    incidents/<id>/scenario.v<N>.json
    incidents/<id>/audit.log
    incidents/<id>/reports/<version>-<elapsed>.json
    incidents/<id>/record.json

Writers race on optimistic version tokens: a save claims scenario.v<N+1>
atomically (O_EXCL), so of two writers from the same base version exactly
one wins and the other gets VersionConflict. Readers never block.
"""

from __future__ import annotations

import json
import os
import re
import threading
from dataclasses import dataclass
from datetime import datetime, timezone
from fractions import Fraction
from pathlib import Path
from typing import Optional

from .documents import (
    report_to_json,
    scenario_to_json,
    validate_scenario_bytes,
)
from .model import DecisionReport, IncidentScenario, RadsError
from .rational import format_rational

_VERSION_RE = re.compile(r"^scenario\.v(\d+)\.json$")


class StorageUnavailable(RadsError):
    """The backing directory cannot be read or written."""


class VersionConflict(RadsError):
    """Another writer committed first from the same base version."""


class NotFound(RadsError):
    """Unknown incident id, version, or report."""


@dataclass(frozen=True)
class AuditEntry:
    actor: str
    timestamp: str
    summary: str

    def as_dict(self) -> dict:
        return {"actor": self.actor, "timestamp": self.timestamp, "summary": self.summary}


@dataclass(frozen=True)
class IncidentRecord:
    """Reporter/status metadata kept alongside the versioned scenarios."""

    id: str
    reporter: str
    status: str
    detected_at: str
    reported_at: str
    evidence: tuple[str, ...]

    def as_dict(self) -> dict:
        return {
            "id": self.id,
            "reporter": self.reporter,
            "status": self.status,
            "detected_at": self.detected_at,
            "reported_at": self.reported_at,
            "evidence": list(self.evidence),
        }


@dataclass(frozen=True)
class IncidentSummary:
    id: str
    organisation: str
    status: str
    latest_version: int
    detected_at: str

    def as_dict(self) -> dict:
        return {
            "id": self.id,
            "organisation": self.organisation,
            "status": self.status,
            "latest_version": self.latest_version,
            "detected_at": self.detected_at,
        }


def _utc_now() -> datetime:
    return datetime.now(timezone.utc)


def _elapsed_token(elapsed: Fraction) -> str:
    # "/" is not filename-safe; 7/3 days becomes "7_3"
    return format_rational(Fraction(elapsed)).replace("/", "_")


class IncidentStore:
    """Versioned scenario persistence with an append-only audit trail."""

    def __init__(self, root: Path | str):
        self.root = Path(root)
        self._audit_lock = threading.Lock()
        self._last_audit_ns: dict[str, int] = {}
        try:
            (self.root / "incidents").mkdir(parents=True, exist_ok=True)
        except OSError as err:
            raise StorageUnavailable(f"cannot initialise store at {self.root}: {err}")

    # -- paths --------------------------------------------------------------

    def _incident_dir(self, incident_id: str, must_exist: bool = True) -> Path:
        if not incident_id or "/" in incident_id or incident_id in (".", ".."):
            raise NotFound(f"invalid incident id {incident_id!r}")
        path = self.root / "incidents" / incident_id
        if must_exist and not path.is_dir():
            raise NotFound(f"no such incident {incident_id!r}")
        return path

    def _versions(self, incident_dir: Path) -> list[int]:
        try:
            names = os.listdir(incident_dir)
        except FileNotFoundError:
            return []
        except OSError as err:
            raise StorageUnavailable(str(err))
        return sorted(
            int(m.group(1)) for m in (_VERSION_RE.match(n) for n in names) if m
        )

    def current_version(self, incident_id: str) -> int:
        versions = self._versions(self._incident_dir(incident_id))
        if not versions:
            raise NotFound(f"incident {incident_id!r} has no scenario versions")
        return versions[-1]

    def exists(self, incident_id: str) -> bool:
        try:
            return self._incident_dir(incident_id).is_dir()
        except NotFound:
            return False

    # -- scenarios ------------------------------------------------------------

    def save_scenario(
        self,
        scenario: IncidentScenario,
        base_version: Optional[int] = None,
        actor: str = "anonymous",
        detected_at: Optional[datetime] = None,
        summary: Optional[str] = None,
    ) -> int:
        """Persist a new version; returns the version token.

        base_version is the version the caller edited from (None skips the
        staleness pre-check but still loses an O_EXCL race). Prior versions
        are retained.
        """
        incident_dir = self._incident_dir(scenario.id, must_exist=False)
        created = not incident_dir.is_dir()
        try:
            incident_dir.mkdir(parents=True, exist_ok=True)
            (incident_dir / "reports").mkdir(exist_ok=True)
        except OSError as err:
            raise StorageUnavailable(str(err))

        current = (self._versions(incident_dir) or [0])[-1]
        if base_version is not None and base_version != current:
            raise VersionConflict(
                f"base version {base_version} is stale; current is {current}"
            )
        target = (base_version if base_version is not None else current) + 1
        path = incident_dir / f"scenario.v{target}.json"
        try:
            fd = os.open(path, os.O_CREAT | os.O_EXCL | os.O_WRONLY, 0o644)
        except FileExistsError:
            raise VersionConflict(f"version {target} was committed concurrently")
        except OSError as err:
            raise StorageUnavailable(str(err))
        try:
            with os.fdopen(fd, "wb") as fh:
                fh.write(scenario_to_json(scenario))
        except OSError as err:
            raise StorageUnavailable(str(err))

        if created:
            self._write_record(
                scenario.id,
                IncidentRecord(
                    id=scenario.id,
                    reporter=actor,
                    status="open",
                    detected_at=(detected_at or _utc_now()).isoformat(),
                    reported_at=_utc_now().isoformat(),
                    evidence=(),
                ),
            )
        if summary is None:
            summary = "incident created" if created else f"scenario saved (v{target})"
        self.append_audit(scenario.id, actor, summary)
        return target

    def load_scenario(
        self, incident_id: str, version: Optional[int] = None
    ) -> IncidentScenario:
        return validate_or_die(self.load_scenario_bytes(incident_id, version))

    def load_scenario_bytes(
        self, incident_id: str, version: Optional[int] = None
    ) -> bytes:
        incident_dir = self._incident_dir(incident_id)
        if version is None:
            version = self.current_version(incident_id)
        path = incident_dir / f"scenario.v{version}.json"
        try:
            return path.read_bytes()
        except FileNotFoundError:
            raise NotFound(f"incident {incident_id!r} has no version {version}")
        except OSError as err:
            raise StorageUnavailable(str(err))

    # -- audit ----------------------------------------------------------------

    def append_audit(
        self, incident_id: str, actor: str, summary: str
    ) -> AuditEntry:
        """Append one entry; existing entries are never touched."""
        incident_dir = self._incident_dir(incident_id)
        with self._audit_lock:
            # keep timestamps strictly increasing even if the clock stalls
            now_ns = max(
                int(_utc_now().timestamp() * 10**9),
                self._last_audit_ns.get(incident_id, 0) + 1000,
            )
            self._last_audit_ns[incident_id] = now_ns
            stamp = datetime.fromtimestamp(now_ns / 10**9, timezone.utc).isoformat()
            entry = AuditEntry(actor=actor, timestamp=stamp, summary=summary)
            line = json.dumps(entry.as_dict(), ensure_ascii=False) + "\n"
            try:
                with open(incident_dir / "audit.log", "a", encoding="utf-8") as fh:
                    fh.write(line)
            except OSError as err:
                raise StorageUnavailable(str(err))
        return entry

    def read_audit(self, incident_id: str) -> list[AuditEntry]:
        path = self._incident_dir(incident_id) / "audit.log"
        if not path.exists():
            return []
        entries = []
        for line in path.read_text(encoding="utf-8").splitlines():
            doc = json.loads(line)
            entries.append(AuditEntry(doc["actor"], doc["timestamp"], doc["summary"]))
        return entries

    # -- records ----------------------------------------------------------------

    def _write_record(self, incident_id: str, record: IncidentRecord) -> None:
        path = self._incident_dir(incident_id) / "record.json"
        try:
            path.write_text(
                json.dumps(record.as_dict(), ensure_ascii=False, indent=2) + "\n",
                encoding="utf-8",
            )
        except OSError as err:
            raise StorageUnavailable(str(err))

    def get_record(self, incident_id: str) -> IncidentRecord:
        path = self._incident_dir(incident_id) / "record.json"
        try:
            doc = json.loads(path.read_text(encoding="utf-8"))
        except FileNotFoundError:
            raise NotFound(f"incident {incident_id!r} has no record")
        except OSError as err:
            raise StorageUnavailable(str(err))
        return IncidentRecord(
            id=doc["id"],
            reporter=doc["reporter"],
            status=doc["status"],
            detected_at=doc["detected_at"],
            reported_at=doc["reported_at"],
            evidence=tuple(doc.get("evidence", ())),
        )

    def set_status(self, incident_id: str, status: str, actor: str = "anonymous") -> None:
        record = self.get_record(incident_id)
        self._write_record(
            incident_id,
            IncidentRecord(
                id=record.id,
                reporter=record.reporter,
                status=status,
                detected_at=record.detected_at,
                reported_at=record.reported_at,
                evidence=record.evidence,
            ),
        )
        self.append_audit(incident_id, actor, f"status set to {status}")

    def add_evidence(self, incident_id: str, uri: str, actor: str = "anonymous") -> None:
        record = self.get_record(incident_id)
        self._write_record(
            incident_id,
            IncidentRecord(
                id=record.id,
                reporter=record.reporter,
                status=record.status,
                detected_at=record.detected_at,
                reported_at=record.reported_at,
                evidence=record.evidence + (uri,),
            ),
        )
        self.append_audit(incident_id, actor, f"evidence added: {uri}")

    # -- reports ----------------------------------------------------------------

    def save_report(
        self, incident_id: str, version: int, report: DecisionReport, actor: str = "anonymous"
    ) -> Path:
        """Store an evaluation keyed by the exact scenario version it used."""
        incident_dir = self._incident_dir(incident_id)
        reports_dir = incident_dir / "reports"
        try:
            reports_dir.mkdir(exist_ok=True)
            path = reports_dir / f"{version}-{_elapsed_token(report.elapsed_days)}.json"
            path.write_bytes(report_to_json(report))
        except OSError as err:
            raise StorageUnavailable(str(err))
        self.append_audit(
            incident_id,
            actor,
            f"evaluated v{version} at day {format_rational(report.elapsed_days)}",
        )
        return path

    def load_report_bytes(
        self, incident_id: str, version: int, elapsed_days: Fraction | int
    ) -> bytes:
        path = (
            self._incident_dir(incident_id)
            / "reports"
            / f"{version}-{_elapsed_token(Fraction(elapsed_days))}.json"
        )
        try:
            return path.read_bytes()
        except FileNotFoundError:
            raise NotFound(
                f"no stored report for {incident_id!r} v{version} "
                f"day {format_rational(Fraction(elapsed_days))}"
            )
        except OSError as err:
            raise StorageUnavailable(str(err))

    # -- listing ----------------------------------------------------------------

    def list_incidents(self, status: Optional[str] = None) -> list[IncidentSummary]:
        base = self.root / "incidents"
        summaries = []
        for incident_id in sorted(os.listdir(base)):
            if not (base / incident_id).is_dir():
                continue
            try:
                record = self.get_record(incident_id)
                scenario = self.load_scenario(incident_id)
                version = self.current_version(incident_id)
            except (NotFound, StorageUnavailable):
                continue
            if status is not None and record.status != status:
                continue
            summaries.append(
                IncidentSummary(
                    id=incident_id,
                    organisation=scenario.organisation,
                    status=record.status,
                    latest_version=version,
                    detected_at=record.detected_at,
                )
            )
        return summaries


def validate_or_die(raw: bytes) -> IncidentScenario:
    """Parse bytes we wrote ourselves; a failure means the store is damaged."""
    result = validate_scenario_bytes(raw)
    if result.scenario is None:
        details = "; ".join(v.message for v in result.violations)
        raise StorageUnavailable(f"stored scenario no longer validates: {details}")
    return result.scenario
