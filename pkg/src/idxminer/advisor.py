"""Turn mined itemsets into per-table index candidates and score them.

A closed itemset may span several tables (join predicates routinely do);
since the emitted indexes are single-table, each itemset is partitioned by
table and every per-table fragment becomes a candidate. Fragments that
coincide across itemsets merge, keeping the highest support seen. Columns
inside a composite candidate are ordered by descending single-column
support so the most frequent attribute leads the key.

The score is an explicit heuristic, reported as an estimate and never as a
measured benefit:

    score = (support / workload_size) * log2(1 + row_count)

with an estimated index size of row_count * (8 + 16 per key column) bytes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Mapping, Optional

from .catalog import CatalogSnapshot, MissingStatsError, is_large
from .miner import ClosedItemset, TransactionDatabase, canonical_order
from .workload import AttributeItem, SchemaMap, TransactionContext

DEFAULT_THRESHOLD_ROWS = 100_000
ROW_POINTER_BYTES = 8
KEY_BYTES_PER_COLUMN = 16


class Strategy(str, Enum):
    ALL = "ALL"
    LARGE_TABLES = "LARGE_TABLES"


@dataclass(frozen=True)
class IndexCandidate:
    table: str
    columns: tuple[str, ...]
    support: int
    source_itemsets: tuple[ClosedItemset, ...]

    def sort_key(self) -> tuple:
        return (self.table, self.columns)


@dataclass(frozen=True)
class ConfigurationTotals:
    candidate_count: int
    estimated_bytes: int
    tables_touched: int


@dataclass(frozen=True)
class IndexConfiguration:
    strategy: Strategy
    candidates: tuple[IndexCandidate, ...]
    scores: tuple[float, ...]
    est_bytes: tuple[int, ...]
    totals: ConfigurationTotals


def build_database(
    contexts: Iterable[TransactionContext],
) -> tuple[TransactionDatabase, dict[int, AttributeItem]]:
    """Encode transaction contexts into an integer-item database.

    Item ids are assigned by sorted attribute order, so the encoding is
    deterministic for a given workload.
    """
    rows = [ctx.items for ctx in contexts]
    attrs = sorted(set().union(*rows)) if rows else []
    id_of = {attr: i for i, attr in enumerate(attrs)}
    db = TransactionDatabase.from_transactions(
        [{id_of[a] for a in row} for row in rows]
    )
    return db, {i: attr for attr, i in id_of.items()}


def singleton_supports(closed: Iterable[ClosedItemset]) -> dict[int, int]:
    """Single-item support of every item appearing in the closed sets.

    An item's singleton support equals the highest support among closed sets
    containing it (its own closure is one of them).
    """
    supports: dict[int, int] = {}
    for itemset in closed:
        for item in itemset.items:
            if supports.get(item, 0) < itemset.support:
                supports[item] = itemset.support
    return supports


def derive_candidates(
    closed: Iterable[ClosedItemset],
    schema: SchemaMap,
    items_by_id: Mapping[int, AttributeItem],
    maximal_only: bool = True,
    diagnostics: Optional[list[str]] = None,
) -> list[IndexCandidate]:
    """Partition closed itemsets by table into merged index candidates.

    With ``maximal_only`` a candidate whose column set is a strict subset of
    another candidate on the same table is dropped; the composite's
    leading-prefix ordering can serve the subset.
    """
    closed = canonical_order(closed)
    singles = singleton_supports(closed)

    def diag(message: str) -> None:
        if diagnostics is not None:
            diagnostics.append(message)

    fragments: dict[tuple[str, frozenset[str]], tuple[int, list[ClosedItemset]]] = {}
    for itemset in closed:
        by_table: dict[str, list[int]] = {}
        for item_id in itemset.items:
            attr = items_by_id[item_id]
            if not schema.has_table(attr.table):
                diag(f"itemset references unknown table '{attr.table}'; item skipped")
                continue
            by_table.setdefault(attr.table, []).append(item_id)
        if not by_table:
            diag("itemset skipped: no item resolves to a known table")
            continue
        for table, item_ids in by_table.items():
            key = (table, frozenset(items_by_id[i].column for i in item_ids))
            best, sources = fragments.get(key, (0, []))
            fragments[key] = (max(best, itemset.support), sources + [itemset])

    if maximal_only:
        keys = list(fragments)
        kept = {}
        for key in keys:
            table, columns = key
            subsumed = any(
                other_table == table and columns < other_columns
                for other_table, other_columns in keys
                if (other_table, other_columns) != key
            )
            if not subsumed:
                kept[key] = fragments[key]
        fragments = kept

    column_item = {
        (attr.table, attr.column): item_id for item_id, attr in items_by_id.items()
    }
    candidates = []
    for (table, columns), (support, sources) in fragments.items():
        ordered = tuple(
            sorted(columns, key=lambda c: (-singles[column_item[(table, c)]], c))
        )
        candidates.append(
            IndexCandidate(
                table=table,
                columns=ordered,
                support=support,
                source_itemsets=tuple(canonical_order(set(sources))),
            )
        )
    candidates.sort(key=lambda c: (-c.support,) + c.sort_key())
    return candidates


def score(candidate: IndexCandidate, snapshot: CatalogSnapshot,
          workload_size: int) -> float:
    """Frequency-weighted size heuristic; grows with support and row count."""
    if workload_size < 1:
        raise ValueError("workload_size must be >= 1")
    row_count = snapshot.get(candidate.table).row_count
    return (candidate.support / workload_size) * math.log2(1 + row_count)


def estimated_index_bytes(candidate: IndexCandidate,
                          snapshot: CatalogSnapshot) -> int:
    """Rough b-tree footprint: per-row pointer plus fixed bytes per key column."""
    row_count = snapshot.get(candidate.table).row_count
    return row_count * (ROW_POINTER_BYTES + KEY_BYTES_PER_COLUMN * len(candidate.columns))


def select(
    candidates: Iterable[IndexCandidate],
    strategy: Strategy,
    snapshot: Optional[CatalogSnapshot],
    threshold_rows: int = DEFAULT_THRESHOLD_ROWS,
    *,
    workload_size: int,
    diagnostics: Optional[list[str]] = None,
) -> IndexConfiguration:
    """Apply a selection strategy and score the surviving candidates.

    LARGE_TABLES requires a snapshot covering every candidate table and
    keeps only candidates on tables at or above ``threshold_rows``. ALL
    keeps everything; candidates without statistics then score 0 with a
    diagnostic instead of failing the run.
    """
    pool = list(candidates)
    seen = set()
    for candidate in pool:
        key = (candidate.table, candidate.columns)
        if key in seen:
            raise ValueError(f"duplicate candidate {key}")
        seen.add(key)

    if strategy is Strategy.LARGE_TABLES:
        if snapshot is None:
            raise MissingStatsError(
                "strategy LARGE_TABLES requires table statistics"
            )
        missing = sorted({c.table for c in pool if c.table not in snapshot})
        if missing:
            raise MissingStatsError(
                "no statistics for table(s): " + ", ".join(missing)
            )
        kept = [c for c in pool if is_large(c.table, snapshot, threshold_rows)]
    else:
        kept = pool

    scored = []
    for candidate in kept:
        if snapshot is not None and candidate.table in snapshot:
            value = score(candidate, snapshot, workload_size)
            size = estimated_index_bytes(candidate, snapshot)
        else:
            if diagnostics is not None:
                diagnostics.append(
                    f"no statistics for table '{candidate.table}'; score set to 0"
                )
            value, size = 0.0, 0
        scored.append((candidate, value, size))
    scored.sort(key=lambda row: (-row[1],) + row[0].sort_key())

    ordered = tuple(row[0] for row in scored)
    totals = ConfigurationTotals(
        candidate_count=len(ordered),
        estimated_bytes=sum(row[2] for row in scored),
        tables_touched=len({c.table for c in ordered}),
    )
    return IndexConfiguration(
        strategy=strategy,
        candidates=ordered,
        scores=tuple(row[1] for row in scored),
        est_bytes=tuple(row[2] for row in scored),
        totals=totals,
    )
