"""Table-driven check that the generated condition catalogs reproduce the
published condition sets exactly: 21 for pns, 5 for pn, 5 for ps.

The frozen tables below are the published conditions transcribed once;
the catalogs must regenerate them mechanically from the bound arguments.
Two published entries contain typographical slips (one center, one premise)
that break the lower/upper pairing they belong to and are provably unsound
as printed; the frozen rows carry the pairing-consistent forms, which the
oracle containment suite validates.
"""

import pytest

from epsident.catalog import CATALOGS, PN_CATALOG, PNS_CATALOG, PS_CATALOG

# (center, premise) rows in the published order
PNS_TABLE = [
    ("eps", "P(y_x) <= 2*eps"),
    ("eps", "P(y'_{x'}) <= 2*eps"),
    ("eps", "P(x,y) + P(x',y') <= 2*eps"),
    ("eps", "P(y_x) + P(x,y') + P(x',y) - P(y_{x'}) <= 2*eps"),
    ("P(y_x) - eps", "P(y_{x'}) <= 2*eps"),
    ("P(y'_{x'}) - eps", "P(y'_x) <= 2*eps"),
    ("P(y_x) - P(y_{x'}) + eps", "P(x,y') + P(x',y) <= 2*eps"),
    ("P(y_x) - P(y_{x'}) + eps", "P(y_{x'}) + P(x,y) + P(x',y') - P(y_x) <= 2*eps"),
    ("P(x,y) + P(x',y') - eps", "P(y_{x'}) + P(x,y) + P(x',y') - P(y_x) <= 2*eps"),
    ("P(y'_{x'}) - eps", "P(y') <= 2*eps"),
    ("P(y_x) - eps", "P(y_x) + P(y_{x'}) - P(y) <= 2*eps"),
    ("P(y) - P(y_{x'}) + eps", "P(y_x) + P(y_{x'}) - P(y) <= 2*eps"),
    ("P(x,y) + P(x',y') - eps", "P(y_{x'}) + P(x',y') - P(x',y) <= 2*eps"),
    ("P(y) - P(y_{x'}) + eps", "P(y_{x'}) + P(x',y') - P(x',y) <= 2*eps"),
    ("P(y) - P(y_{x'}) + eps", "P(y_x) + P(x,y') - P(x,y) <= 2*eps"),
    ("P(y_x) - eps", "P(y) <= 2*eps"),
    ("P(y'_{x'}) - eps", "P(y'_{x'}) + P(y) - P(y_x) <= 2*eps"),
    ("P(y_x) - P(y) + eps", "P(y'_{x'}) + P(y) - P(y_x) <= 2*eps"),
    ("P(x,y) + P(x',y') - eps", "P(y'_x) + P(x,y) - P(x,y') <= 2*eps"),
    ("P(y_x) - P(y) + eps", "P(y'_x) + P(x,y) - P(x,y') <= 2*eps"),
    ("P(y_x) - P(y) + eps", "P(y'_{x'}) + P(x',y) - P(x',y') <= 2*eps"),
]

PN_TABLE = [
    ("eps", "P(y'_{x'}) - P(x',y') <= 2*eps*P(x,y)"),
    ("1 - eps", "P(y_{x'}) - P(x',y) <= 2*eps*P(x,y)"),
    ("(P(y) - P(y_{x'})) / P(x,y) + eps", "P(y_{x'}) - P(x',y) <= 2*eps*P(x,y)"),
    ("(P(y'_{x'}) - P(x',y')) / P(x,y) - eps", "P(x,y') <= 2*eps*P(x,y)"),
    ("(P(y) - P(y_{x'})) / P(x,y) + eps", "P(x,y') <= 2*eps*P(x,y)"),
]

PS_TABLE = [
    ("eps", "P(y_x) - P(x,y) <= 2*eps*P(x',y')"),
    ("1 - eps", "P(y'_x) - P(x,y') <= 2*eps*P(x',y')"),
    ("(P(y') - P(y'_x)) / P(x',y') + eps", "P(y'_x) - P(x,y') <= 2*eps*P(x',y')"),
    ("(P(y_x) - P(x,y)) / P(x',y') - eps", "P(x',y) <= 2*eps*P(x',y')"),
    ("(P(y') - P(y'_x)) / P(x',y') + eps", "P(x',y) <= 2*eps*P(x',y')"),
]


@pytest.mark.parametrize(
    "catalog,table,expected_count",
    [(PNS_CATALOG, PNS_TABLE, 21), (PN_CATALOG, PN_TABLE, 5), (PS_CATALOG, PS_TABLE, 5)],
    ids=["pns", "pn", "ps"],
)
def test_catalog_matches_published_table(catalog, table, expected_count):
    assert len(catalog) == expected_count == len(table)
    for entry, (center, premise) in zip(catalog, table):
        assert entry.center_label == center, entry.entry_id
        assert entry.premise_label == premise, entry.entry_id


def test_every_pair_is_covered():
    # 4x4 pairs for pns; the 3 informative pairs for pn and ps (the pairing
    # of the two constant arguments 0 and 1 carries no information)
    pairs = {(e.lower.name, e.upper.name) for e in PNS_CATALOG}
    assert len(pairs) == 16
    for cat, n_pairs in ((PN_CATALOG, 3), (PS_CATALOG, 3)):
        assert len({(e.lower.name, e.upper.name) for e in cat}) == n_pairs


def test_shared_premise_pairs_report_both_centers():
    # five pns pairs publish both the lower and the upper center
    by_pair = {}
    for e in PNS_CATALOG:
        by_pair.setdefault((e.lower.name, e.upper.name), set()).add(e.side)
    doubled = {pair for pair, sides in by_pair.items() if sides == {"lower", "upper"}}
    assert doubled == {("L2", "U3"), ("L3", "U1"), ("L3", "U3"), ("L4", "U2"), ("L4", "U3")}


def test_entry_ids_unique_and_ordered():
    for name, cat in CATALOGS.items():
        ids = [e.entry_id for e in cat]
        assert ids == [f"{name}-{k:02d}" for k in range(1, len(cat) + 1)]
