"""Knowledge-pack manifests and loading.

A pack is a directory with a ``pack.json`` manifest naming the script files
(concatenated in order into one script set), the default context, golden
transcripts, and a locale.  Loading parses and validates everything; a golden
pack must be warning-free, while fixture packs marked ``expect_warnings``
may load with warnings (errors always fail).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from .ast import Diagnostic, ScriptSet
from .parser import parse_with_diagnostics
from .store import InteractionRecord, read_transcript
from .validate import validate


class ManifestMissing(Exception):
    pass


class PackValidationFailed(Exception):
    def __init__(self, diagnostics: list[Diagnostic]):
        self.diagnostics = diagnostics
        super().__init__("\n".join(d.format() for d in diagnostics))


@dataclass(frozen=True)
class PackManifest:
    name: str
    script_files: tuple[str, ...]
    default_context: str
    golden_transcripts: tuple[str, ...] = ()
    locale: str = "vi"
    expect_warnings: bool = False


@dataclass
class LoadedPack:
    manifest: PackManifest
    script_set: ScriptSet
    warnings: list[Diagnostic]
    transcripts: dict[str, list[InteractionRecord]] = field(default_factory=dict)
    root: Path = Path(".")

    @property
    def name(self) -> str:
        return self.manifest.name


def _read_manifest(path: Path) -> PackManifest:
    data = json.loads(path.read_text(encoding="utf-8"))
    try:
        return PackManifest(
            name=data["name"],
            script_files=tuple(data["script_files"]),
            default_context=data["default_context"],
            golden_transcripts=tuple(data.get("golden_transcripts", ())),
            locale=data.get("locale", "vi"),
            expect_warnings=bool(data.get("expect_warnings", False)),
        )
    except KeyError as missing:
        raise ManifestMissing(f"{path}: manifest lacks required field {missing}")


def load_pack(manifest_path: str | Path) -> LoadedPack:
    manifest_path = Path(manifest_path)
    if not manifest_path.is_file():
        raise ManifestMissing(f"no pack manifest at {manifest_path}")
    manifest = _read_manifest(manifest_path)
    root = manifest_path.parent

    contexts = []
    diagnostics: list[Diagnostic] = []
    for rel in manifest.script_files:
        script_path = root / rel
        if not script_path.is_file():
            raise ManifestMissing(
                f"pack '{manifest.name}' references missing file {script_path}")
        parsed, diags = parse_with_diagnostics(
            script_path.read_text(encoding="utf-8"), source_name=rel)
        diagnostics.extend(diags)
        if parsed is not None:
            contexts.extend(parsed.contexts)

    if any(d.is_error for d in diagnostics):
        raise PackValidationFailed([d for d in diagnostics if d.is_error])

    script_set = ScriptSet(
        tuple(contexts),
        default_context=manifest.default_context,
        source_name=manifest.name,
    )
    diagnostics = validate(script_set)
    errors = [d for d in diagnostics if d.is_error]
    warnings = [d for d in diagnostics if not d.is_error]
    if errors:
        raise PackValidationFailed(errors)
    if warnings and not manifest.expect_warnings:
        raise PackValidationFailed(warnings)

    transcripts = {}
    for rel in manifest.golden_transcripts:
        transcript_path = root / rel
        if not transcript_path.is_file():
            raise ManifestMissing(
                f"pack '{manifest.name}' references missing transcript {transcript_path}")
        transcripts[transcript_path.stem] = read_transcript(transcript_path)

    return LoadedPack(manifest, script_set, warnings, transcripts, root)


def builtin_packs_root() -> Path:
    return Path(str(resources.files("convagent") / "packs"))


def available_builtin_packs() -> dict[str, Path]:
    root = builtin_packs_root()
    packs = {}
    if root.is_dir():
        for child in sorted(root.iterdir()):
            manifest = child / "pack.json"
            if manifest.is_file():
                packs[child.name] = manifest
    return packs


def resolve_pack(name_or_path: str | Path) -> LoadedPack:
    """Load a pack by filesystem path (manifest file or its directory) or by
    built-in pack name."""
    path = Path(name_or_path)
    if path.is_file():
        return load_pack(path)
    if path.is_dir() and (path / "pack.json").is_file():
        return load_pack(path / "pack.json")
    builtin = available_builtin_packs().get(str(name_or_path))
    if builtin is not None:
        return load_pack(builtin)
    raise ManifestMissing(f"no pack named or located at {name_or_path!r}")
