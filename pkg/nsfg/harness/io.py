"""Run artifacts: CSV diagnostics, binary state snapshots, content hashes."""
import csv
import hashlib
import struct
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable

import numpy as np

from nsfg.basis import GalerkinVelocity, build_basis
from nsfg.core.errors import ConfigError
from nsfg.diagnostics.records import CSV_COLUMNS, FunctionalRecord
from nsfg.fields import Grid, ScalarField
from nsfg.models import SystemState

SNAPSHOT_MAGIC = b"NSFG1"
# dim, points per axis, length per axis, number of λ coefficients, time
SNAPSHOT_HEADER = struct.Struct("<BIdId")


def write_csv(path: Path, records: Iterable[FunctionalRecord]) -> None:
    with Path(path).open("w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(CSV_COLUMNS)
        for record in records:
            writer.writerow(["%.17g" % value for value in record.as_row()])


def read_csv(path: Path) -> list[dict[str, float]]:
    with Path(path).open("r", encoding="utf-8", newline="") as fh:
        return [{key: float(value) for key, value in row.items()} for row in csv.DictReader(fh)]


def write_snapshot(path: Path, state: SystemState) -> None:
    grid = state.grid
    lam = state.velocity.lam
    header = SNAPSHOT_HEADER.pack(grid.dim, grid.points_per_axis, grid.length_per_axis, lam.size, state.t)
    with Path(path).open("wb") as fh:
        fh.write(SNAPSHOT_MAGIC)
        fh.write(header)
        for array in (state.rho.values, lam, state.theta.values):
            fh.write(np.ascontiguousarray(array, dtype="<f8").tobytes())


@dataclass(frozen=True, eq=False)
class Snapshot:
    dim: int
    points: int
    length: float
    t: float
    rho: np.ndarray
    lam: np.ndarray
    theta: np.ndarray

    def to_state(self) -> SystemState:
        grid = Grid(self.dim, self.points, self.length)
        basis = build_basis(grid, self.lam.size // self.dim)
        return SystemState(
            ScalarField(grid, self.rho), GalerkinVelocity(basis, self.lam), ScalarField(grid, self.theta), self.t
        )


def read_snapshot(path: Path) -> Snapshot:
    raw = Path(path).read_bytes()
    if not raw.startswith(SNAPSHOT_MAGIC):
        raise ConfigError(f"{path} is not an NSFG1 snapshot")
    offset = len(SNAPSHOT_MAGIC)
    dim, points, length, n_coeffs, t = SNAPSHOT_HEADER.unpack_from(raw, offset)
    offset += SNAPSHOT_HEADER.size
    size = points**dim
    body = np.frombuffer(raw, dtype="<f8", offset=offset)
    if body.size != 2 * size + n_coeffs:
        raise ConfigError(f"{path}: payload of {body.size} values does not match its header")
    shape = (points,) * dim
    rho = body[:size].reshape(shape).copy()
    lam = body[size : size + n_coeffs].copy()
    theta = body[size + n_coeffs :].reshape(shape).copy()
    return Snapshot(dim, points, length, t, rho, lam, theta)


def sha256_file(path: Path) -> str:
    digest = hashlib.sha256()
    with Path(path).open("rb") as fh:
        for chunk in iter(lambda: fh.read(1 << 16), b""):
            digest.update(chunk)
    return digest.hexdigest()
