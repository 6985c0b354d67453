#include "ffd/mesh_io.hpp"

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <vector>

#include <json.hpp>

#include "ffd/errors.hpp"

namespace ffd {

namespace {

[[noreturn]] void parse_fail(const std::filesystem::path& path, size_t line,
                             const std::string& message) {
    fail("parse-error", path.string() + ":" + std::to_string(line) + ": " + message);
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.back() == '\r' || s.back() == ' ' || s.back() == '\t'))
        s.remove_suffix(1);
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    return s;
}

std::vector<std::string_view> split_ws(std::string_view s) {
    std::vector<std::string_view> out;
    size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
        size_t j = i;
        while (j < s.size() && s[j] != ' ' && s[j] != '\t') ++j;
        if (j > i) out.push_back(s.substr(i, j - i));
        i = j;
    }
    return out;
}

bool parse_double(std::string_view tok, double& value) {
    const char* end = tok.data() + tok.size();
    auto [ptr, ec] = std::from_chars(tok.data(), end, value);
    return ec == std::errc() && ptr == end;
}

// Leading integer of an OBJ face token (`7`, `7/1`, `7//3`, ...).
bool parse_face_index(std::string_view tok, long& value) {
    const size_t slash = tok.find('/');
    std::string_view head = slash == std::string_view::npos ? tok : tok.substr(0, slash);
    const char* end = head.data() + head.size();
    auto [ptr, ec] = std::from_chars(head.data(), end, value);
    return ec == std::errc() && ptr == end;
}

struct FaceRecord {
    std::array<long, 3> indices;  // 1-based as written
    std::string group;
    size_t line;
};

TemplateMesh load_obj(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) fail("io-error", "cannot open " + path.string());

    std::vector<Vec3> vertices;
    std::vector<FaceRecord> faces;
    std::string current_group;

    std::string raw;
    size_t line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string_view line = trim(raw);
        if (line.empty() || line[0] == '#') continue;
        const auto tokens = split_ws(line);
        const std::string_view rec = tokens[0];

        if (rec == "v") {
            if (tokens.size() < 4)
                parse_fail(path, line_no, "vertex record needs 3 coordinates");
            Vec3 p;
            for (int a = 0; a < 3; ++a)
                if (!parse_double(tokens[1 + a], p[a]))
                    parse_fail(path, line_no,
                               "bad vertex coordinate '" + std::string(tokens[1 + a]) + "'");
            vertices.push_back(p);
        } else if (rec == "f") {
            if (tokens.size() != 4)
                parse_fail(path, line_no, "only triangle faces are supported (got " +
                                              std::to_string(tokens.size() - 1) +
                                              " vertices)");
            FaceRecord face;
            face.group = current_group;
            face.line = line_no;
            for (int c = 0; c < 3; ++c) {
                long idx = 0;
                if (!parse_face_index(tokens[1 + c], idx))
                    parse_fail(path, line_no,
                               "bad face index '" + std::string(tokens[1 + c]) + "'");
                if (idx < 1)
                    parse_fail(path, line_no, "face index " + std::to_string(idx) +
                                                  " is not a valid 1-based index");
                face.indices[c] = idx;
            }
            faces.push_back(std::move(face));
        } else if (rec == "g") {
            current_group = tokens.size() > 1 ? std::string(tokens[1]) : std::string();
        } else if (rec == "vn" || rec == "vt" || rec == "o" || rec == "s" ||
                   rec == "usemtl" || rec == "mtllib" || rec == "l") {
            // tolerated, unused
        } else {
            parse_fail(path, line_no, "unknown record '" + std::string(rec) + "'");
        }
    }

    TemplateMesh mesh;
    mesh.vertices.resize(Eigen::Index(vertices.size()), 3);
    for (size_t i = 0; i < vertices.size(); ++i)
        mesh.vertices.row(Eigen::Index(i)) = vertices[i].transpose();

    mesh.triangles.resize(Eigen::Index(faces.size()), 3);
    mesh.structure_labels.resize(Eigen::Index(faces.size()));
    std::map<std::string, int> group_labels;
    for (size_t f = 0; f < faces.size(); ++f) {
        for (int c = 0; c < 3; ++c) {
            const long idx = faces[f].indices[c];
            if (idx > long(vertices.size()))
                fail("index-out-of-range",
                     path.string() + ":" + std::to_string(faces[f].line) +
                         ": face index " + std::to_string(idx) + " exceeds vertex count " +
                         std::to_string(vertices.size()));
            mesh.triangles(Eigen::Index(f), c) = int(idx - 1);
        }
        auto [it, inserted] =
            group_labels.try_emplace(faces[f].group, int(group_labels.size()));
        mesh.structure_labels[Eigen::Index(f)] = it->second;
        if (inserted)
            mesh.structure_names.push_back(
                faces[f].group.empty() ? "structure_" + std::to_string(it->second)
                                       : faces[f].group);
    }
    return mesh;
}

void save_obj(const TemplateMesh& mesh, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) fail("io-error", "cannot open " + path.string() + " for writing");

    char buf[128];
    for (Eigen::Index v = 0; v < mesh.num_vertices(); ++v) {
        std::snprintf(buf, sizeof(buf), "v %.17g %.17g %.17g\n", mesh.vertices(v, 0),
                      mesh.vertices(v, 1), mesh.vertices(v, 2));
        out << buf;
    }
    int current = -1;
    for (Eigen::Index t = 0; t < mesh.num_triangles(); ++t) {
        const int label = mesh.structure_labels[t];
        if (label != current) {
            current = label;
            const std::string name = size_t(label) < mesh.structure_names.size()
                                         ? mesh.structure_names[size_t(label)]
                                         : "structure_" + std::to_string(label);
            out << "g " << name << "\n";
        }
        out << "f " << mesh.triangles(t, 0) + 1 << " " << mesh.triangles(t, 1) + 1
            << " " << mesh.triangles(t, 2) + 1 << "\n";
    }
    if (!out) fail("io-error", "failed writing " + path.string());
}

constexpr std::string_view kPlyMagic = "ply";

template <class T>
void read_binary(std::ifstream& in, T* data, size_t count,
                 const std::filesystem::path& path) {
    in.read(reinterpret_cast<char*>(data), std::streamsize(count * sizeof(T)));
    if (!in) fail("parse-error", path.string() + ": unexpected end of binary payload");
}

TemplateMesh load_ply(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail("io-error", "cannot open " + path.string());

    size_t line_no = 0;
    auto next_line = [&]() -> std::string {
        std::string line;
        if (!std::getline(in, line))
            parse_fail(path, line_no, "unexpected end of header");
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        return line;
    };

    if (next_line() != kPlyMagic) parse_fail(path, line_no, "missing ply magic");
    if (next_line() != "format binary_little_endian 1.0")
        parse_fail(path, line_no, "only binary_little_endian 1.0 is supported");

    long nv = -1, nf = -1;
    enum class Elem { None, Vertex, Face } current = Elem::None;
    struct Property { std::string type, name; bool list = false; };
    std::vector<Property> vertex_props, face_props;

    for (;;) {
        const std::string line = next_line();
        const auto tokens = split_ws(line);
        if (tokens.empty()) continue;
        if (tokens[0] == "comment") continue;
        if (tokens[0] == "end_header") break;
        if (tokens[0] == "element") {
            if (tokens.size() != 3) parse_fail(path, line_no, "malformed element line");
            long count = 0;
            const auto [ptr, ec] = std::from_chars(
                tokens[2].data(), tokens[2].data() + tokens[2].size(), count);
            if (ec != std::errc() || ptr != tokens[2].data() + tokens[2].size() || count < 0)
                parse_fail(path, line_no, "bad element count '" + std::string(tokens[2]) + "'");
            if (tokens[1] == "vertex") { nv = count; current = Elem::Vertex; }
            else if (tokens[1] == "face") { nf = count; current = Elem::Face; }
            else parse_fail(path, line_no, "unsupported element '" + std::string(tokens[1]) + "'");
        } else if (tokens[0] == "property") {
            Property p;
            if (tokens.size() == 5 && tokens[1] == "list") {
                p.list = true;
                if (tokens[2] != "uchar" || tokens[3] != "int")
                    parse_fail(path, line_no, "face lists must be 'list uchar int'");
                p.name = std::string(tokens[4]);
            } else if (tokens.size() == 3) {
                p.type = std::string(tokens[1]);
                p.name = std::string(tokens[2]);
            } else {
                parse_fail(path, line_no, "malformed property line");
            }
            if (current == Elem::Vertex) vertex_props.push_back(p);
            else if (current == Elem::Face) face_props.push_back(p);
            else parse_fail(path, line_no, "property before any element");
        } else {
            parse_fail(path, line_no, "unknown header record '" + std::string(tokens[0]) + "'");
        }
    }

    if (nv < 0) parse_fail(path, line_no, "missing vertex element");
    if (nf < 0) parse_fail(path, line_no, "missing face element");

    int ix = -1, iy = -1, iz = -1;
    for (size_t i = 0; i < vertex_props.size(); ++i) {
        if (vertex_props[i].type != "double" && vertex_props[i].type != "float")
            parse_fail(path, line_no, "vertex properties must be float or double");
        if (vertex_props[i].name == "x") ix = int(i);
        if (vertex_props[i].name == "y") iy = int(i);
        if (vertex_props[i].name == "z") iz = int(i);
    }
    if (ix < 0 || iy < 0 || iz < 0)
        parse_fail(path, line_no, "vertex element must carry x, y, z");

    bool has_label = false;
    for (const auto& p : face_props) {
        if (p.list && p.name != "vertex_indices" && p.name != "vertex_index")
            parse_fail(path, line_no, "unsupported face list '" + p.name + "'");
        if (!p.list) {
            if (p.name == "label" && p.type == "int") has_label = true;
            else parse_fail(path, line_no, "unsupported face property '" + p.name + "'");
        }
    }

    TemplateMesh mesh;
    mesh.vertices.resize(nv, 3);
    for (long v = 0; v < nv; ++v) {
        for (size_t i = 0; i < vertex_props.size(); ++i) {
            double value = 0;
            if (vertex_props[i].type == "double") {
                read_binary(in, &value, 1, path);
            } else {
                float f = 0;
                read_binary(in, &f, 1, path);
                value = f;
            }
            if (int(i) == ix) mesh.vertices(v, 0) = value;
            else if (int(i) == iy) mesh.vertices(v, 1) = value;
            else if (int(i) == iz) mesh.vertices(v, 2) = value;
        }
    }

    mesh.triangles.resize(nf, 3);
    mesh.structure_labels = Eigen::VectorXi::Zero(nf);
    for (long f = 0; f < nf; ++f) {
        for (const auto& p : face_props) {
            if (p.list) {
                uint8_t count = 0;
                read_binary(in, &count, 1, path);
                if (count != 3)
                    fail("parse-error", path.string() + ": face " + std::to_string(f) +
                                            " has " + std::to_string(count) +
                                            " vertices; only triangles are supported");
                int32_t idx[3];
                read_binary(in, idx, 3, path);
                for (int c = 0; c < 3; ++c) {
                    if (idx[c] < 0 || idx[c] >= nv)
                        fail("index-out-of-range",
                             path.string() + ": face " + std::to_string(f) +
                                 " references vertex " + std::to_string(idx[c]) +
                                 " of " + std::to_string(nv));
                    mesh.triangles(f, c) = idx[c];
                }
            } else {
                int32_t label = 0;
                read_binary(in, &label, 1, path);
                mesh.structure_labels[f] = label;
            }
        }
    }

    const int ns = mesh.num_structures();
    if (nf > 0) {
        std::set<int> labels(mesh.structure_labels.begin(), mesh.structure_labels.end());
        if (*labels.begin() < 0)
            fail("parse-error", path.string() + ": negative structure label");
    }
    for (int s = 0; s < ns; ++s) mesh.structure_names.push_back("structure_" + std::to_string(s));
    (void)has_label;
    return mesh;
}

void save_ply(const TemplateMesh& mesh, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail("io-error", "cannot open " + path.string() + " for writing");

    out << "ply\nformat binary_little_endian 1.0\n"
        << "element vertex " << mesh.num_vertices() << "\n"
        << "property double x\nproperty double y\nproperty double z\n"
        << "element face " << mesh.num_triangles() << "\n"
        << "property list uchar int vertex_indices\n"
        << "property int label\n"
        << "end_header\n";

    for (Eigen::Index v = 0; v < mesh.num_vertices(); ++v) {
        const double xyz[3] = {mesh.vertices(v, 0), mesh.vertices(v, 1),
                               mesh.vertices(v, 2)};
        out.write(reinterpret_cast<const char*>(xyz), sizeof(xyz));
    }
    for (Eigen::Index t = 0; t < mesh.num_triangles(); ++t) {
        const uint8_t count = 3;
        const int32_t idx[3] = {mesh.triangles(t, 0), mesh.triangles(t, 1),
                                mesh.triangles(t, 2)};
        const int32_t label = mesh.structure_labels[t];
        out.write(reinterpret_cast<const char*>(&count), 1);
        out.write(reinterpret_cast<const char*>(idx), sizeof(idx));
        out.write(reinterpret_cast<const char*>(&label), sizeof(label));
    }
    if (!out) fail("io-error", "failed writing " + path.string());
}

void load_tags(TemplateMesh& mesh, const std::filesystem::path& mesh_path) {
    const auto sidecar = tags_sidecar_path(mesh_path);
    std::ifstream in(sidecar);
    if (!in) return;
    nlohmann::json j;
    try {
        in >> j;
        for (const auto& [name, indices] : j.items()) {
            auto& set = mesh.tags[name];
            for (const auto& idx : indices) set.insert(idx.get<int>());
        }
    } catch (const nlohmann::json::exception& e) {
        fail("parse-error", sidecar.string() + ": " + e.what());
    }
}

void save_tags(const TemplateMesh& mesh, const std::filesystem::path& mesh_path) {
    if (mesh.tags.empty()) return;
    nlohmann::json j = nlohmann::json::object();
    for (const auto& [name, tris] : mesh.tags)
        j[name] = std::vector<int>(tris.begin(), tris.end());
    const auto sidecar = tags_sidecar_path(mesh_path);
    std::ofstream out(sidecar);
    if (!out) fail("io-error", "cannot open " + sidecar.string() + " for writing");
    out << j.dump(2) << "\n";
}

}  // namespace

MeshFormat format_from_path(const std::filesystem::path& path) {
    const auto ext = path.extension().string();
    if (ext == ".obj") return MeshFormat::Obj;
    if (ext == ".ply") return MeshFormat::Ply;
    fail("bad-argument", "cannot deduce mesh format from '" + path.string() + "'");
}

std::filesystem::path tags_sidecar_path(const std::filesystem::path& mesh_path) {
    std::filesystem::path p = mesh_path;
    p.replace_extension(".tags.json");
    return p;
}

TemplateMesh load_mesh(const std::filesystem::path& path, MeshFormat format) {
    TemplateMesh mesh =
        format == MeshFormat::Obj ? load_obj(path) : load_ply(path);
    load_tags(mesh, path);
    validate(mesh);
    return mesh;
}

TemplateMesh load_mesh(const std::filesystem::path& path) {
    return load_mesh(path, format_from_path(path));
}

void save_mesh(const TemplateMesh& mesh, const std::filesystem::path& path,
               MeshFormat format) {
    validate(mesh);
    if (format == MeshFormat::Obj) save_obj(mesh, path);
    else save_ply(mesh, path);
    save_tags(mesh, path);
}

void save_mesh(const TemplateMesh& mesh, const std::filesystem::path& path) {
    save_mesh(mesh, path, format_from_path(path));
}

MeshSequence load_sequence(const std::filesystem::path& manifest_path) {
    std::ifstream in(manifest_path);
    if (!in) fail("io-error", "cannot open " + manifest_path.string());
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        fail("parse-error", manifest_path.string() + ": " + e.what());
    }

    MeshSequence seq;
    try {
        const auto& frames = j.at("frames");
        if (frames.size() < 2)
            fail("degenerate-input", "sequence needs at least 2 frames, got " +
                                         std::to_string(frames.size()));
        const auto base = manifest_path.parent_path();
        for (const auto& frame : frames) {
            std::filesystem::path p = frame.at("path").get<std::string>();
            if (p.is_relative()) p = base / p;
            seq.frames.push_back(load_mesh(p));
            seq.frame_times.push_back(frame.at("time").get<double>());
        }
    } catch (const nlohmann::json::exception& e) {
        fail("parse-error", manifest_path.string() + ": " + e.what());
    }

    for (size_t i = 1; i < seq.frame_times.size(); ++i)
        if (seq.frame_times[i] <= seq.frame_times[i - 1])
            fail("non-monotone-time",
                 "frame " + std::to_string(i) + " time " +
                     std::to_string(seq.frame_times[i]) + " does not increase");
    for (size_t i = 1; i < seq.frames.size(); ++i)
        if (!same_connectivity(seq.frames[0], seq.frames[i]))
            fail("connectivity-mismatch",
                 "frame " + std::to_string(i) + " connectivity differs from frame 0");
    return seq;
}

void save_sequence(const MeshSequence& sequence,
                   const std::filesystem::path& manifest_path, MeshFormat format) {
    const auto dir = manifest_path.parent_path();
    const char* ext = format == MeshFormat::Obj ? ".obj" : ".ply";
    nlohmann::json j;
    auto& frames = j["frames"] = nlohmann::json::array();
    for (size_t i = 0; i < sequence.frames.size(); ++i) {
        char name[32];
        std::snprintf(name, sizeof(name), "frame_%04zu%s", i, ext);
        save_mesh(sequence.frames[i], dir / name, format);
        frames.push_back({{"path", name}, {"time", sequence.frame_times[i]}});
    }
    std::ofstream out(manifest_path);
    if (!out) fail("io-error", "cannot open " + manifest_path.string() + " for writing");
    out << j.dump(2) << "\n";
}

}  // namespace ffd
