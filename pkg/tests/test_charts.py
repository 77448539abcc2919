import xml.etree.ElementTree as ET

from a1mod.charts import page_ascii, page_svg, towers_ascii, towers_svg


def test_towers_ascii_golden():
    assert towers_ascii({0: 1, 4: 1}, 4) == (
        " ^           ^\n"
        " |           |\n"
        " |           |\n"
        " |           |\n"
        " |           |\n"
        " |           |\n"
        "---------------\n"
        "0  1  2  3  4\n"
        "stem ->\n")


def test_towers_ascii_multiplicity():
    text = towers_ascii({0: 2}, 1)
    assert text.splitlines()[0].count("^") == 2


def test_page_ascii_markers_and_arrows():
    text = page_ascii([(0, 0, "a"), (5, 0, "b"), (4, 2, "c")],
                      [(5, 0, 4, 2)])
    lines = text.splitlines()
    assert lines[-1] == "d2: (stem 5, sigma 0) -> (stem 4, sigma 2)"
    # sigma 0 and sigma 2 use different marker glyphs
    assert "o" in lines[2] and "#" in lines[0]


def test_page_ascii_empty():
    assert page_ascii([]) == "(empty page)\n"


def test_page_ascii_stable():
    classes = [(0, 0, "a"), (4, 2, "b")]
    assert page_ascii(classes) == page_ascii(list(classes))


def test_svg_wellformed():
    for text in (towers_svg({0: 1, 4: 2}, 6),
                 page_svg([(0, 0, "a"), (4, 2, "b"), (8, 4, "c")],
                          [(5, 0, 4, 2)])):
        root = ET.fromstring(text)
        assert root.tag.endswith("svg")
        assert len(list(root)) > 0
