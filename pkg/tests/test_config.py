import math

import pytest

from kerrswap.config import ConfigError, build_config, fmt_float, parse_angle, read_config_file, render_csv


@pytest.mark.parametrize(
    "text,value",
    [
        ("pi", math.pi), ("pi/2", math.pi / 2), ("3pi/2", 1.5 * math.pi), ("1/3 pi", math.pi / 3),
        ("0.25*pi", math.pi / 4), ("-pi/4", -math.pi / 4), ("2 * pi", 2 * math.pi), ("0.5", 0.5),
    ],
)
def test_parse_angle(text, value):
    assert parse_angle(text) == pytest.approx(value, rel=1e-15)


@pytest.mark.parametrize("text", ["", "pie", "pi/x", "two pi"])
def test_parse_angle_rejects(text):
    with pytest.raises(ValueError):
        parse_angle(text)


def test_config_file_roundtrip(tmp_path):
    path = tmp_path / "a.cfg"
    path.write_text("# fig 5c\ndelta = 7\nchi = 0.7  # Kerr\ntheta = 1/3 pi\nphi = 3pi/2\nt-max = 20\n")
    cfg = build_config(read_config_file(path))
    assert cfg.params.delta == 7.0 and cfg.params.chi == 0.7
    assert cfg.init.theta == pytest.approx(math.pi / 3)
    assert cfg.t_max == 20.0 and cfg.theta_text == "1/3 pi"


def test_diagnostics_carry_line_and_field(tmp_path):
    path = tmp_path / "b.cfg"
    path.write_text("delta = 1\n\nchi = abc\n")
    with pytest.raises(ConfigError) as err:
        build_config(read_config_file(path))
    assert err.value.line == 3 and err.value.key == "chi"
    assert "line 3" in str(err.value)
    path.write_text("delta = 1\nbogus = 2\n")
    with pytest.raises(ConfigError) as err:
        read_config_file(path)
    assert err.value.line == 2
    path.write_text("delta 1\n")
    with pytest.raises(ConfigError):
        read_config_file(path)


@pytest.mark.parametrize(
    "entries",
    [
        {"t_max": ("0", None)}, {"t_max": ("51", None)}, {"samples": ("1", None)},
        {"draws": ("0", None)}, {"chi": ("-1", None)}, {"format": ("json", None)},
    ],
)
def test_invalid_values(entries):
    with pytest.raises(ConfigError):
        build_config(entries)


def test_float_formatting():
    assert fmt_float(0.1) == "0.10000000000000001"
    assert fmt_float(float("nan")) == "nan"
    text = render_csv(("a", "b"), [(1.0, "x")], ["meta"])
    assert text == "# meta\na,b\n1,x\n"
