"""
Exact structural checks of built arrangements: per-cell Euler identities and the
census formulas for simple arrangements.
"""

from collections import Counter
from math import comb
from typing import Dict

from geometry.arrangement2d import Arrangement2
from geometry.arrangement3d import Arrangement3
from geometry.errors import VerificationError


def expected_cell_count(n: int) -> int:
    return sum(comb(n, i) for i in range(4))


def expected_face_count(n: int) -> int:
    return 1 + n + comb(n, 2)


def check_cell_identities(arr: Arrangement3) -> None:
    """
    For every cell: 2E = 3V, F = E - V + 2, hence V < 2F and E < 3F; and
    0 <= F_real <= F.
    """
    for cell in arr.cells:
        v, e, f = cell.v_count, cell.e_count, cell.f_count
        if 2 * e != 3 * v:
            raise VerificationError(f"Cell {cell.id}: 2E = {2 * e} but 3V = {3 * v}.")
        if f != e - v + 2:
            raise VerificationError(f"Cell {cell.id}: F = {f} but E - V + 2 = {e - v + 2}.")
        if not (v < 2 * f and e < 3 * f):
            raise VerificationError(f"Cell {cell.id}: V={v}, E={e} not below 2F, 3F for F={f}.")
        if 3 * f != e + 6:
            raise VerificationError(f"Cell {cell.id}: F = {f} but E/3 + 2 = {e / 3 + 2}.")
        if not 0 <= cell.f_real <= f:
            raise VerificationError(f"Cell {cell.id}: F_real = {cell.f_real} outside [0, {f}].")


def check_face_sharing(arr: Arrangement3) -> None:
    """
    Every generator face polygon bounds exactly two cells, every box face exactly one.
    """
    owners: Counter = Counter()
    for cell in arr.cells:
        for face in cell.face_records:
            owners[(face.supporting_plane_id, frozenset(face.vertex_ids))] += 1
    for (plane_id, _), count in owners.items():
        expected = 1 if plane_id < 0 else 2
        if count != expected:
            raise VerificationError(
                f"A face on plane {plane_id} bounds {count} cells, expected {expected}."
            )


def check_arrangement_3d(arr: Arrangement3) -> Dict[str, int]:
    """
    Run every structural check on a 3D arrangement and return its census.
    """
    n = arr.n
    check_cell_identities(arr)
    check_face_sharing(arr)
    if len(arr.cells) != expected_cell_count(n):
        raise VerificationError(
            f"{len(arr.cells)} cells, expected {expected_cell_count(n)} for n={n}."
        )
    if arr.generator_vertex_count != comb(n, 3):
        raise VerificationError(
            f"{arr.generator_vertex_count} generator vertices, expected {comb(n, 3)}."
        )
    return {
        "cells": len(arr.cells),
        "generator_vertices": arr.generator_vertex_count,
        "vertices": len(arr.vertices),
        "generator_faces": sum(cell.f_real for cell in arr.cells) // 2,
    }


def check_arrangement_2d(arr: Arrangement2) -> Dict[str, int]:
    n = len(arr.lines)
    if len(arr.faces) != expected_face_count(n):
        raise VerificationError(
            f"{len(arr.faces)} faces, expected {expected_face_count(n)} for n={n}."
        )
    if arr.generator_vertex_count != comb(n, 2):
        raise VerificationError(
            f"{arr.generator_vertex_count} generator vertices, expected {comb(n, 2)}."
        )
    edge_total = sum(face.edge_count for face in arr.faces)
    if edge_total != 2 * len(arr.edges):
        raise VerificationError(
            f"Face edge counts sum to {edge_total}, expected 2 x {len(arr.edges)} edges."
        )
    for face in arr.faces:
        if not face.touches_box and face.edge_count < 3:
            raise VerificationError(
                f"Interior face {face.id} has only {face.edge_count} edges."
            )
    return {
        "faces": len(arr.faces),
        "generator_vertices": arr.generator_vertex_count,
        "edges": len(arr.edges),
    }
