"""File formats: topology and flow JSON, schedule JSON/CSV, pool directories.

Schedule files carry one row per (slot, channel) cell; empty cells say
"idle". Duplicate cell rows cannot be represented in the grid, so the loader
quarantines them in Schedule.extra_cells for the validator to report instead
of silently dropping data. Pool directories hold one schedule file per
member plus a manifest with the generation seed and content hashes; loads
verify the hashes so a tampered or torn pool fails loudly.
"""
from __future__ import annotations

import csv
import hashlib
import json
from pathlib import Path
from typing import Union

from .errors import ScheduleFormatError
from .model import Edge, Flow, FlowSet, NetworkGraph, Schedule, Transmission
from .protocol import SchedulePool

PathLike = Union[str, Path]

SCHEDULE_FIELDS = ["slot", "channel", "flow", "instance", "hop", "sender", "receiver"]


def save_topology(graph: NetworkGraph, path: PathLike) -> None:
    doc = {
        "nodes": graph.node_count,
        "access_points": sorted(graph.access_points),
        "edges": [[e.sender, e.receiver] for e in graph.edges],
    }
    Path(path).write_text(json.dumps(doc, indent=2) + "\n")


def load_topology(path: PathLike) -> NetworkGraph:
    try:
        doc = json.loads(Path(path).read_text())
        return NetworkGraph(
            node_count=int(doc["nodes"]),
            edges=tuple(Edge(int(u), int(v)) for u, v in doc["edges"]),
            access_points=frozenset(int(a) for a in doc["access_points"]),
        )
    except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
        raise ScheduleFormatError(f"bad topology file {path}: {exc}") from exc


def save_flows(flows: FlowSet, path: PathLike) -> None:
    doc = {
        "flows": [
            {
                "id": f.id,
                "source": f.source,
                "destination": f.destination,
                "period": f.period,
                "deadline": f.deadline,
                "route": [[e.sender, e.receiver] for e in f.route],
            }
            for f in flows.flows
        ]
    }
    Path(path).write_text(json.dumps(doc, indent=2) + "\n")


def load_flows(path: PathLike) -> FlowSet:
    try:
        doc = json.loads(Path(path).read_text())
        return FlowSet(
            tuple(
                Flow(
                    id=int(f["id"]),
                    source=int(f["source"]),
                    destination=int(f["destination"]),
                    period=int(f["period"]),
                    deadline=int(f["deadline"]),
                    route=tuple(Edge(int(u), int(v)) for u, v in f["route"]),
                )
                for f in doc["flows"]
            )
        )
    except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
        raise ScheduleFormatError(f"bad flow file {path}: {exc}") from exc


def _schedule_rows(schedule: Schedule) -> list[dict]:
    rows = []
    for slot in range(1, schedule.hyper_period + 1):
        for ch in range(1, schedule.channel_count + 1):
            tx = schedule.cell(slot, ch)
            if tx is None:
                rows.append({"slot": slot, "channel": ch, "flow": "idle"})
            else:
                rows.append(
                    {
                        "slot": slot,
                        "channel": ch,
                        "flow": tx.flow_id,
                        "instance": tx.instance,
                        "hop": tx.hop,
                        "sender": tx.edge.sender,
                        "receiver": tx.edge.receiver,
                    }
                )
    return rows


def save_schedule(schedule: Schedule, path: PathLike) -> None:
    """Write a schedule as .json or .csv (chosen by extension)."""
    path = Path(path)
    rows = _schedule_rows(schedule)
    if path.suffix == ".json":
        doc = {
            "hyper_period": schedule.hyper_period,
            "channels": schedule.channel_count,
            "cells": rows,
        }
        path.write_text(json.dumps(doc, sort_keys=True, separators=(",", ":")) + "\n")
    elif path.suffix == ".csv":
        with path.open("w", newline="") as fh:
            writer = csv.DictWriter(fh, fieldnames=SCHEDULE_FIELDS, restval="")
            writer.writeheader()
            writer.writerows(rows)
    else:
        raise ScheduleFormatError(f"unsupported schedule extension: {path.suffix or '(none)'}")


def _build_schedule(rows: list[dict], hyper_period: int, channels: int, path) -> Schedule:
    schedule = Schedule(hyper_period, channels)
    for row in rows:
        if row["flow"] == "idle":
            continue
        try:
            slot = int(row["slot"])
            ch = int(row["channel"])
            tx = Transmission(
                int(row["flow"]),
                int(row["instance"]),
                int(row["hop"]),
                Edge(int(row["sender"]), int(row["receiver"])),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise ScheduleFormatError(f"bad schedule row in {path}: {row}") from exc
        if schedule.cell(slot, ch) is not None:
            schedule.extra_cells.append((slot, ch, tx))  # duplicate cell: quarantine
        elif schedule.locate(tx.flow_id, tx.instance, tx.hop) is not None:
            raise ScheduleFormatError(
                f"{path}: hop ({tx.flow_id}, {tx.instance}, {tx.hop}) appears in two cells"
            )
        else:
            schedule.place(slot, ch, tx)
    return schedule


def load_schedule(path: PathLike) -> Schedule:
    path = Path(path)
    if path.suffix == ".json":
        try:
            doc = json.loads(path.read_text())
            rows = doc["cells"]
            hp = int(doc["hyper_period"])
            m = int(doc["channels"])
        except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
            raise ScheduleFormatError(f"bad schedule file {path}: {exc}") from exc
    elif path.suffix == ".csv":
        with path.open(newline="") as fh:
            reader = csv.DictReader(fh)
            if reader.fieldnames is None or set(SCHEDULE_FIELDS) - set(reader.fieldnames):
                raise ScheduleFormatError(f"{path}: missing schedule columns")
            rows = list(reader)
        if not rows:
            raise ScheduleFormatError(f"{path}: empty schedule")
        try:
            hp = max(int(r["slot"]) for r in rows)
            m = max(int(r["channel"]) for r in rows)
        except (TypeError, ValueError) as exc:
            raise ScheduleFormatError(f"bad schedule row in {path}") from exc
    else:
        raise ScheduleFormatError(f"unsupported schedule extension: {path.suffix or '(none)'}")
    return _build_schedule(rows, hp, m, path)


def _sha256(path: Path) -> str:
    return hashlib.sha256(path.read_bytes()).hexdigest()


def save_pool(pool: SchedulePool, directory: PathLike) -> None:
    """Write one schedule file per member plus a hash manifest."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    entries = []
    for i, schedule in enumerate(pool):
        name = f"schedule_{i:04d}.json"
        save_schedule(schedule, directory / name)
        entries.append({"file": name, "sha256": _sha256(directory / name)})
    manifest = {
        "seed": pool.seed,
        "count": len(pool) - 1,
        "hyper_period": pool.hyper_period,
        "channels": pool.channel_count,
        "schedules": entries,
    }
    (directory / "manifest.json").write_text(json.dumps(manifest, indent=2) + "\n")


def load_pool(directory: PathLike) -> SchedulePool:
    """Load a pool directory, verifying the manifest hashes."""
    directory = Path(directory)
    try:
        manifest = json.loads((directory / "manifest.json").read_text())
        entries = manifest["schedules"]
    except (OSError, json.JSONDecodeError, KeyError) as exc:
        raise ScheduleFormatError(f"bad pool manifest in {directory}: {exc}") from exc
    schedules = []
    for entry in entries:
        member = directory / entry["file"]
        if not member.is_file():
            raise ScheduleFormatError(f"pool member missing: {member}")
        if _sha256(member) != entry["sha256"]:
            raise ScheduleFormatError(f"pool member hash mismatch: {member}")
        schedules.append(load_schedule(member))
    if not schedules:
        raise ScheduleFormatError(f"pool manifest in {directory} lists no schedules")
    return SchedulePool(tuple(schedules), seed=manifest.get("seed"))
