import json

from aerial_kpi import __version__
from aerial_kpi.manifest import RunManifest, file_sha256, manifest_path, write_manifest

ABC_SHA256 = "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad"


def test_file_sha256(tmp_path):
    path = tmp_path / "abc.txt"
    path.write_bytes(b"abc")
    assert file_sha256(path) == ABC_SHA256


def test_manifest_path():
    assert str(manifest_path("out/model.json")) == "out/model.json.manifest.json"


def test_write_manifest(tmp_path):
    source = tmp_path / "site.json"
    source.write_bytes(b"abc")
    output = tmp_path / "model.json"

    manifest = RunManifest(command="fit", seeds={"seed": 42})
    manifest.add_input("site", source)
    manifest.add_output(output)
    written = write_manifest(manifest, output)

    document = json.loads(written.read_text())
    assert written == manifest_path(output)
    assert document["command"] == "fit"
    assert document["seeds"] == {"seed": 42}
    assert document["input_hashes"] == {"site": ABC_SHA256}
    assert document["config_paths"] == {"site": str(source)}
    assert document["output_paths"] == [str(output)]
    assert document["tool_version"] == __version__
    assert document["created_at"]
