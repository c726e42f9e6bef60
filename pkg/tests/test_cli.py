import io
import subprocess
import sys
import xml.etree.ElementTree as ET

import pytest

from viviani.cli import cmd_locus, cmd_verify, main
from viviani.errors import SceneError
from viviani.scene import parse_scene
from viviani.svg import fmt

RIGHT = """
# worked example
vertex = 0 0
vertex = 0 3
vertex = 4 0
leg_sum = 3.16743
squares_sum = 5
"""

EQUILATERAL = """
vertex = -2 0
vertex = 2 0
vertex = 0 3.4641016151377544
leg_sum = 3.4641016151377544
squares_sum = 6
"""


@pytest.fixture
def scene_file(tmp_path):
    def write(text, name="scene.txt"):
        path = tmp_path / name
        path.write_text(text)
        return str(path)

    return write


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def fields(out):
    return dict(line.split(": ", 1) for line in out.splitlines() if ": " in line)


def test_parse_scene():
    s = parse_scene(RIGHT + "ellipse = 4 2\nsize = 300\ndecorate = yes\n")
    assert len(s.vertices) == 3
    assert s.leg_sum == 3.16743 and s.squares_sum == 5.0
    assert s.ellipse == (4.0, 2.0)
    assert s.size == 300 and s.decorate


@pytest.mark.parametrize(
    "text",
    ["vertex = 1", "leg_sum = abc", "colour = red", "leg_sum = 1\nleg_sum = 2", "just words", "leg_sum = inf", "decorate = maybe"],
)
def test_parse_scene_errors(text):
    with pytest.raises(SceneError):
        parse_scene(text)


def test_fmt_is_twelve_significant_digits():
    assert fmt(1 / 3) == "0.333333333333"
    assert fmt(-0.0) == "0"
    assert fmt(2.4000000000000004) == "2.4"


def test_habitat_segment(scene_file, capsys):
    code, out, _ = run(["habitat", "--scene", scene_file(RIGHT)], capsys)
    assert code == 0
    f = fields(out)
    assert f["habitat"] == "segment"
    assert f["value_range"] == "2.4 4"
    points = [line for line in out.splitlines() if line.startswith("point:")]
    assert points == ["point: 1.918575 0", "point: 0.66972 2.49771"]


def test_habitat_everywhere(scene_file, capsys):
    code, out, _ = run(["habitat", "--scene", scene_file(EQUILATERAL)], capsys)
    assert code == 0 and fields(out)["habitat"] == "everywhere"


def test_habitat_empty_is_success(scene_file, capsys):
    code, out, _ = run(["habitat", "--scene", scene_file(RIGHT.replace("3.16743", "10"))], capsys)
    assert code == 0 and fields(out)["habitat"] == "empty"


def test_habitat_levels(scene_file, capsys):
    code, out, _ = run(["habitat", "--scene", scene_file(RIGHT), "--levels", "3"], capsys)
    assert code == 0
    assert sum(line.startswith("level:") for line in out.splitlines()) == 3


def test_locus_report(scene_file, capsys):
    code, out, _ = run(["locus", "--scene", scene_file(RIGHT)], capsys)
    assert code == 0
    f = fields(out)
    coeffs = [float(v) for v in f["conic"].split()]
    assert coeffs == pytest.approx([c / 75 for c in (34, 24, 41, -72, -96, 19)], rel=1e-11)
    assert f["class"] == "ellipse"
    assert f["center"] == "0.72 0.96"
    assert f["meeting_points"] == "2"
    meets = [line for line in out.splitlines() if line.startswith("meeting_point:")]
    assert all(line.endswith("inside") for line in meets)


def test_locus_equilateral_is_circle(scene_file, capsys):
    code, out, _ = run(["locus", "--scene", scene_file(EQUILATERAL)], capsys)
    assert code == 0 and fields(out)["class"] == "circle"


def test_locus_needs_triangle(scene_file, capsys):
    square = "vertex = 0 0\nvertex = 1 0\nvertex = 1 1\nvertex = 0 1\nsquares_sum = 2\n"
    code, _, err = run(["locus", "--scene", scene_file(square)], capsys)
    assert code == 2 and "triangle" in err


@pytest.mark.parametrize(
    "ellipse, k, klass",
    [("4 2", "4.5", "ellipse"), ("13 2", "5.81538461538", "ellipse"), ("6 6", "10", "circle")],
)
def test_inverse(scene_file, capsys, ellipse, k, klass):
    code, out, _ = run(["inverse", "--scene", scene_file(f"ellipse = {ellipse}\n")], capsys)
    assert code == 0
    f = fields(out)
    assert f["k"] == k
    assert f["class"] == klass


@pytest.mark.parametrize("ellipse", ["2 4", "0 0", "-1 -2"])
def test_inverse_rejects_bad_ellipse(scene_file, capsys, ellipse):
    code, _, _ = run(["inverse", "--scene", scene_file(f"ellipse = {ellipse}\n")], capsys)
    assert code == 2


@pytest.mark.parametrize(
    "text",
    ["vertex = 0 0\nvertex = 1 1\nvertex = 2 2\nleg_sum = 1\n", "vertex = 0 0\nvertex = 1 0\nvertex = 0 1\n", "garbage"],
)
def test_invalid_scene_exit_code(scene_file, capsys, text):
    code, _, err = run(["habitat", "--scene", scene_file(text)], capsys)
    assert code == 2 and err.startswith("error:")


def test_missing_scene_file(capsys, tmp_path):
    code, _, _ = run(["habitat", "--scene", str(tmp_path / "nope")], capsys)
    assert code == 2


def test_verify_pass_and_fail(scene_file, capsys):
    path = scene_file(RIGHT)
    code, out, _ = run(["verify", "--scene", path], capsys)
    assert code == 0 and fields(out)["verify"] == "pass"
    code, out, _ = run(["verify", "--scene", path, "--perturb-a", "1e-2"], capsys)
    assert code == 1 and fields(out)["verify"] == "fail"


def test_verify_viviani(scene_file, capsys):
    code, out, _ = run(["verify", "--scene", scene_file(EQUILATERAL)], capsys)
    assert code == 0
    assert float(fields(out)["viviani_constant"]) == pytest.approx(2 * 3**0.5)


def test_verify_inverse(scene_file, capsys):
    code, out, _ = run(["verify", "--scene", scene_file("ellipse = 13 2\n"), "--resolution", "256"], capsys)
    assert code == 0, out


def test_verify_api():
    text, ok = cmd_verify(parse_scene(RIGHT))
    assert ok and "check: locus_conic pass" in text


def test_svg_written_and_well_formed(scene_file, capsys, tmp_path):
    svg = tmp_path / "fig.svg"
    code, _, _ = run(["locus", "--scene", scene_file(RIGHT), "--svg", str(svg), "--decorate", "--levels", "4"], capsys)
    assert code == 0
    root = ET.fromstring(svg.read_text())
    assert root.tag == "{http://www.w3.org/2000/svg}svg"
    tags = {el.tag.split("}")[1] for el in root.iter()}
    assert {"polygon", "line", "circle", "text"} <= tags


def test_locus_deterministic_in_process():
    scene = parse_scene(RIGHT)
    t1, f1 = cmd_locus(scene, 2, True)
    t2, f2 = cmd_locus(scene, 2, True)
    assert t1 == t2 and f1.render() == f2.render()


def test_stdin_scene_subprocess(tmp_path):
    svg = tmp_path / "a.svg"
    proc = subprocess.run(
        [sys.executable, "-m", "viviani", "habitat", "--scene", "-", "--svg", str(svg)],
        input=RIGHT, capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0
    assert "habitat: segment" in proc.stdout
    ET.fromstring(svg.read_text())
