#pragma once

#include <filesystem>
#include <string>

#include "ffd/mesh.hpp"

namespace ffd {

enum class MeshFormat { Obj, Ply };

// Format deduced from the extension (.obj / .ply).
MeshFormat format_from_path(const std::filesystem::path& path);

// OBJ: ASCII with 1-based `v`/`f`/`g` records; `g <name>` groups become
// structure labels in first-face-appearance order.
// PLY: binary little-endian with double vertex coordinates and a per-face
// int32 `label` property.
// Tags are read from a `<stem>.tags.json` sidecar when present.
TemplateMesh load_mesh(const std::filesystem::path& path, MeshFormat format);
TemplateMesh load_mesh(const std::filesystem::path& path);

void save_mesh(const TemplateMesh& mesh, const std::filesystem::path& path,
               MeshFormat format);
void save_mesh(const TemplateMesh& mesh, const std::filesystem::path& path);

std::filesystem::path tags_sidecar_path(const std::filesystem::path& mesh_path);

// Manifest JSON: {"frames": [{"path": ..., "time": ...}, ...]}; paths are
// resolved relative to the manifest's directory. Needs >= 2 frames with
// strictly increasing times and identical connectivity.
MeshSequence load_sequence(const std::filesystem::path& manifest_path);

// Writes frames as `frame_NNNN.<ext>` plus a manifest at `manifest_path`.
void save_sequence(const MeshSequence& sequence,
                   const std::filesystem::path& manifest_path,
                   MeshFormat format = MeshFormat::Obj);

}  // namespace ffd
