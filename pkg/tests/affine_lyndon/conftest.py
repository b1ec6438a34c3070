import os

import pytest

from affine_lyndon.rootsystem import AffineSystem
from affine_lyndon.slw import SLTable


DEFAULTS_FILE = os.path.join(
    os.path.dirname(__file__), os.pardir, os.pardir, "config-defaults.yaml"
)

G2_ORDERS = [(0, 1, 2), (0, 2, 1), (1, 0, 2), (1, 2, 0), (2, 0, 1), (2, 1, 0)]

# Degrees of the real roots of G2 below delta, over (alpha_0, alpha_1, alpha_2)
A0, A1, A2 = (1, 0, 0), (0, 1, 0), (0, 0, 1)
A12, A01, A122, A012 = (0, 1, 1), (1, 1, 0), (0, 1, 2), (1, 1, 1)
A1222, A0122, A11222 = (0, 1, 3), (1, 1, 2), (0, 2, 3)
A01222, A01122 = (1, 1, 3), (1, 2, 2)


def _family(templates, period=1, explicit=None, start=0):
    return {
        "templates": templates,
        "period": period,
        "explicit": explicit or {},
        "start": start,
    }


def _render(template: str, k: int, period: int, s: str):
    """
    Expand "S^f", "S^c", "S^f-1", ... into powers of s, with f = floor(k/period)
    and c = ceil(k/period); a negative exponent means no formula applies.
    """
    floor, ceil = k // period, -(-k // period)
    parts = []
    for token in template.split():
        if not token.startswith("S^"):
            parts.append(token)
            continue
        exponent = floor if token[2] == "f" else ceil
        if len(token) > 3:
            exponent -= int(token[4:])
        if exponent < 0:
            return None
        parts.append(s * exponent)
    return "".join(parts)


def _slots(first: str, second: str) -> dict:
    return {
        ("slot", 1): _family((first,), start=1),
        ("slot", 2): _family((second,), start=1),
    }


G2_TABLES = {
    (0, 1, 2): {
        "S": "012221",
        A0: _family(
            (
                "01221 S^f-2 0122201221 S^f-1 01221 S^f-1 01222",
                "01221 S^f-1 01221 S^f-1 0122201221 S^f-1 01222",
                "01221 S^f-1 0122201221 S^f-1 0122201221 S^c-1",
            ),
            3,
            {0: "0", 1: "0120122", 2: "0122012201221"},
            3,
        ),
        A1: _family(("S^f 1",)),
        A2: _family(("S^f 2",)),
        A12: _family(("S^f 1 S^f 2", "S^c 2 S^f 1"), 2),
        A01: _family(
            (
                "01221 S^f-1 01221 S^f-1 01221 S^f-1 01222",
                "01221 S^f-1 01221 S^f-1 0122201221 S^c-1",
                "01221 S^f-1 0122201221 S^c-1 01221 S^c-1",
            ),
            3,
            {0: "01", 1: "01201221", 2: "01220122101221"},
            3,
        ),
        A122: _family(
            ("S^f 1 S^f 2 S^f 2", "S^c 2 S^f 1 S^f 2", "S^c 2 S^c 2 S^f 1"), 3
        ),
        A012: _family(
            ("01221 S^f-1 01221 S^f-1 01222", "01221 S^f-1 0122201221 S^c-1"),
            2,
            {0: "012", 1: "012201221"},
            2,
        ),
        A1222: _family(
            (
                "S^f 1 S^f 2 S^f 2 S^f 2",
                "S^c 2 S^f 1 S^f 2 S^f 2",
                "S^c 2 S^c 2 S^f 1 S^f 2",
                "S^c 2 S^c 2 S^c 2 S^f 1",
            ),
            4,
        ),
        A0122: _family(("01221 S^f-1 01222",), 1, {0: "0122"}, 1),
        A11222: _family(
            (
                "S^f 1 S^f 2 S^f 1 S^f 2 S^f 2",
                "S^c 2 S^f 1 S^f 2 S^f 2 S^f 1",
                "S^c 2 S^f 1 S^c 2 S^f 1 S^f 2",
                "S^c 2 S^c 2 S^f 1 S^c 2 S^f 1",
                "S^c 1 S^c 2 S^c 2 S^c 2 S^f 1",
            ),
            5,
        ),
        A01222: _family(("01222 S^f",)),
        A01122: _family(("01221 S^f",)),
        **_slots("01222 S^f-1 1", "01221 S^f-1 2"),
    },
    (0, 2, 1): {
        "S": "012212",
        A0: _family(
            (
                "01222 S^f-2 0122101222 S^f-2 0122101221",
                "01222 S^f-2 01221012210122101222 S^c-2",
            ),
            2,
            {
                0: "0",
                1: "0120122",
                2: "0122012201221",
                3: "0122012210122101222",
                4: "0122201221012220122101221",
            },
            5,
        ),
        A1: _family(("S^f 1",)),
        A2: _family(("S^f 2",)),
        A12: _family(("S^f 2 S^f 1", "S^c 1 S^f 2"), 2),
        A01: _family(
            ("01222 S^f-3 012210122101221",),
            1,
            {0: "01", 1: "01201221", 2: "01220122101221"},
            3,
        ),
        A122: _family(
            ("S^f 2 S^f 2 S^f 1", "S^c 1 S^f 2 S^f 2", "S^c 2 S^c 1 S^f 2"), 3
        ),
        A012: _family(
            ("01222 S^f-2 0122101221",), 1, {0: "012", 1: "012201221"}, 2
        ),
        A1222: _family(
            (
                "S^f 2 S^f 2 S^f 2 S^f 1",
                "S^c 1 S^f 2 S^f 2 S^f 2",
                "S^c 2 S^c 1 S^f 2 S^f 2",
                "S^c 2 S^c 2 S^c 1 S^f 2",
            ),
            4,
        ),
        A0122: _family(("01222 S^f-1 01221",), 1, {0: "0122"}, 1),
        A11222: _family(
            (
                "S^f 2 S^f 2 S^f 1 S^f 2 S^f 1",
                "S^c 1 S^f 2 S^f 2 S^f 2 S^f 1",
                "S^c 1 S^f 2 S^c 1 S^f 2 S^f 2",
                "S^c 2 S^c 1 S^f 2 S^f 2 S^c 1",
                "S^c 2 S^c 1 S^c 2 S^c 1 S^f 2",
            ),
            5,
        ),
        A01222: _family(("01222 S^f",)),
        A01122: _family(("01221 S^f",)),
        **_slots("01221 S^f-1 2", "01222 S^f-1 1"),
    },
    (1, 0, 2): {
        "S": "120122",
        A0: _family(("S^f 0",)),
        A1: _family(
            (
                "12122 S^f-2 12012012012122 S^f-1",
                "12122 S^f-1 12012122 S^f-1 120120",
            ),
            2,
            {0: "1", 1: "1212120", 2: "1212012012122"},
            3,
        ),
        A2: _family(
            (
                "S^f 122 S^f 0 S^f-1 122",
                "S^f 122 S^f 122 S^f 0",
                "S^c 0 S^f 122 S^f 122",
            ),
            3,
            {0: "2"},
            1,
        ),
        A12: _family(("12122 S^f-1 120",), 1, {0: "12"}, 1),
        A01: _family(
            ("12122 S^f-2 120120120",), 1, {0: "10", 1: "12120120"}, 2
        ),
        A122: _family(("S^f 122",)),
        A012: _family(("120 S^f",)),
        A1222: _family(
            (
                "S^f 122 S^f 122 S^f 0 S^f-1 122",
                "S^f 122 S^f 122 S^f 122 S^f 0",
                "S^c 0 S^f 122 S^f 122 S^f 122",
                "S^c 122 S^c 0 S^f 122 S^f 122",
            ),
            4,
            {0: "1222"},
            2,
        ),
        A0122: _family(("S^f 122 S^f 0", "S^c 0 S^f 122"), 2),
        A11222: _family(("12122 S^f",)),
        A01222: _family(
            (
                "S^f 122 S^f 0 S^f 122 S^f 0 S^f-1 122",
                "S^f 122 S^f 122 S^f 0 S^f 122 S^f 0",
                "S^c 0 S^f 122 S^f 122 S^f 122 S^f 0",
                "S^c 0 S^f 122 S^c 0 S^f 122 S^f 122",
                "S^c 122 S^c 0 S^f 122 S^f 122 S^c 0",
            ),
            5,
            {0: "12220"},
            1,
        ),
        A01122: _family(("12122 S^f-1 120120",), 1, {0: "12120"}, 1),
        **_slots("120 S^f-1 122", "12122 S^f-1 0"),
    },
    (1, 2, 0): {
        "S": "122210",
        A0: _family(
            (
                "S^f 10 S^f 2 S^f 2 S^f 2 S^f-1 10",
                "S^f 10 S^f 2 S^f 10 S^f 2 S^f 2",
                "S^c 2 S^f 10 S^f 2 S^f 2 S^f 10",
                "S^c 2 S^f 10 S^c 2 S^f 10 S^f 2",
                "S^c 2 S^c 2 S^f 10 S^c 2 S^f 10",
            ),
            5,
            {0: "0"},
            1,
        ),
        A1: _family(
            (
                "12210 S^f-1 12210 S^f-1 12210 S^f-1 1222",
                "12210 S^f-1 12210 S^f-1 122212210 S^c-1",
                "12210 S^f-1 122212210 S^c-1 12210 S^c-1",
            ),
            3,
            {0: "1", 1: "1212210", 2: "1221221012210"},
            3,
        ),
        A2: _family(("S^f 2",)),
        A12: _family(
            ("12210 S^f-1 12210 S^f-1 1222", "12210 S^f-1 122212210 S^c-1"),
            2,
            {0: "12", 1: "12212210"},
            2,
        ),
        A01: _family(("S^f 10",)),
        A122: _family(("12210 S^f-1 1222",), 1, {0: "122"}, 2),
        A012: _family(("S^f 10 S^f 2", "S^c 2 S^f 10"), 2),
        A1222: _family(("1222 S^f",)),
        A0122: _family(
            ("S^f 10 S^f 2 S^f 2", "S^c 2 S^f 10 S^f 2", "S^c 2 S^c 2 S^f 10"), 3
        ),
        A11222: _family(
            (
                "12210 S^f-1 12210 S^f-1 122212210 S^f-1 1222",
                "12210 S^f-1 122212210 S^f-1 122212210 S^c-1",
                "12210 S^f-1 122212210 S^c-1 12210 S^c-1 1222",
            ),
            3,
            {0: "12122", 1: "12212212210", 2: "12212210122101222"},
            3,
        ),
        A01222: _family(
            (
                "S^f 10 S^f 2 S^f 2 S^f 2",
                "S^c 2 S^f 10 S^f 2 S^f 2",
                "S^c 2 S^c 2 S^f 10 S^f 2",
                "S^c 2 S^c 2 S^c 2 S^f 10",
            ),
            4,
        ),
        A01122: _family(("12210 S^f",)),
        **_slots("1222 S^f-1 10", "12210 S^f-1 2"),
    },
}


def _smallest_two_table(first_pair: str) -> dict:
    # The orders 2<0<1 and 2<1<0 share every word except alpha_0 + alpha_1
    return {
        "S": "221021",
        A0: _family(("S^f 0",)),
        A1: _family(
            (
                "S^f 21 S^f 21 S^f 0 S^f-1 21",
                "S^f 21 S^f 21 S^f 21 S^f 0",
                "S^c 0 S^f 21 S^f 21 S^f 21",
                "S^c 21 S^c 0 S^f 21 S^f 21",
            ),
            4,
            {0: "1"},
            1,
        ),
        A2: _family(("22121 S^f-2 22102210",), 1, {0: "2", 1: "2212210"}, 2),
        A12: _family(("S^f 21",)),
        A01: _family(
            (
                "S^f 21 S^f 0 S^f 21 S^f 0 S^f-1 21",
                "S^f 21 S^f 21 S^f 0 S^f 21 S^f 0",
                "S^c 0 S^f 21 S^f 21 S^f 21 S^f 0",
                "S^c 0 S^f 21 S^c 0 S^f 21 S^f 21",
                "S^c 21 S^c 0 S^f 21 S^f 21 S^c 0",
            ),
            5,
            {0: first_pair},
            1,
        ),
        A122: _family(("22121 S^f-1 2210",), 1, {0: "221"}, 1),
        A012: _family(("S^f 21 S^f 0", "S^c 0 S^f 21"), 2),
        A1222: _family(
            (
                "22121 S^f-2 22102210221022121 S^f-1",
                "22121 S^f-1 221022121 S^f-1 22102210",
            ),
            2,
            {0: "2221", 1: "2212212210", 2: "2212210221022121"},
            3,
        ),
        A0122: _family(("2210 S^f",)),
        A11222: _family(("22121 S^f",)),
        A01222: _family(
            ("22121 S^f-2 221022102210",), 1, {0: "22210", 1: "22122102210"}, 2
        ),
        A01122: _family(
            ("S^f 21 S^f 21 S^f 0", "S^c 0 S^f 21 S^f 21", "S^c 21 S^c 0 S^f 21"), 3
        ),
        **_slots("2210 S^f-1 21", "22121 S^f-1 0"),
    }


G2_TABLES[2, 0, 1] = _smallest_two_table("01")
G2_TABLES[2, 1, 0] = _smallest_two_table("10")


def expected_g2_word(order: tuple, family, k: int):
    """
    The tabulated word of a G2 family at beta + k delta (or the slot (k delta, i)),
    or None where the tables give no formula.
    """
    table = G2_TABLES[order]
    entry = table[family]
    if k in entry["explicit"]:
        return entry["explicit"][k]
    if k < entry["start"]:
        return None
    period = entry["period"]
    return _render(entry["templates"][k % period], k, period, table["S"])


_tables = {}


def cached_table(root_type: str, rank: int, order, max_k: int, **kwargs) -> SLTable:
    """
    Build (or extend) a table once per system and keyword set for the whole session.
    """
    key = (root_type, rank, tuple(order), tuple(sorted(kwargs.items())))
    if key not in _tables:
        system = AffineSystem.build(root_type, rank, list(order))
        _tables[key] = SLTable(system, **kwargs)
    return _tables[key].generate_up_to(max_k)


@pytest.fixture
def table_factory():
    """
    Session-wide cache of generated tables, keyed by system and order.
    """
    return cached_table


@pytest.fixture
def g2_table():
    """
    G2 with 0 < 1 < 2 up to 8 delta.
    """
    return cached_table("G", 2, (0, 1, 2), 8)


@pytest.fixture
def g2_expected():
    """
    Lookup into the tabulated G2 words.
    """
    return expected_g2_word


@pytest.fixture
def defaults_file() -> str:
    """
    Path of the repository's config-defaults.yaml.
    """
    return os.path.abspath(DEFAULTS_FILE)


def truncated(table: SLTable, max_k: int) -> dict:
    """
    The words of a table restricted to heights at most max_k |delta|.
    """
    bound = max_k * table.system.delta_height
    return {root: word for root, word in table.words.items() if root.height <= bound}
