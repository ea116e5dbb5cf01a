#include "solsurf/mesh_io.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <ostream>

#include "solsurf/error.hpp"

namespace solsurf {

TriMesh triangulate(const SurfacePatch& patch)
{
    TriMesh m;
    m.lorentzian = patch.lorentzian();
    std::vector<int> id(patch.X.size(), -1);
    for (int j = 0; j < patch.ny; ++j)
        for (int i = 0; i < patch.nx; ++i)
            if (patch.valid(i, j)) {
                id[patch.index(i, j)] = int(m.vertices.size());
                m.vertices.push_back(patch.X[patch.index(i, j)]);
            }

    auto tri = [&](std::size_t a, std::size_t b, std::size_t c) {
        if (id[a] >= 0 && id[b] >= 0 && id[c] >= 0)
            m.faces.push_back({id[a], id[b], id[c]});
    };
    for (int j = 0; j + 1 < patch.ny; ++j)
        for (int i = 0; i + 1 < patch.nx; ++i) {
            const auto a = patch.index(i, j), b = patch.index(i + 1, j);
            const auto c = patch.index(i + 1, j + 1), d = patch.index(i, j + 1);
            tri(a, b, c);
            tri(a, c, d);
        }
    return m;
}

namespace {

struct PrecisionGuard {
    explicit PrecisionGuard(std::ostream& os) : os(os), old(os.precision(15)) {}
    ~PrecisionGuard() { os.precision(old); }
    std::ostream& os;
    std::streamsize old;
};

}  // namespace

void write_obj(const TriMesh& mesh, std::ostream& os)
{
    PrecisionGuard g(os);
    os << "# solsurf " << (mesh.lorentzian ? "h3" : "e3") << " patch\n";
    for (const auto& v : mesh.vertices) {
        os << "v " << v.x1 << ' ' << v.x2 << ' ' << v.x3 << '\n';
        if (mesh.lorentzian)
            os << "# x0 " << v.x0 << '\n';
    }
    for (const auto& f : mesh.faces)
        os << "f " << f[0] + 1 << ' ' << f[1] + 1 << ' ' << f[2] + 1 << '\n';
}

void write_ply(const TriMesh& mesh, std::ostream& os)
{
    PrecisionGuard g(os);
    os << "ply\nformat ascii 1.0\ncomment solsurf " << (mesh.lorentzian ? "h3" : "e3") << " patch\n";
    os << "element vertex " << mesh.vertices.size() << '\n';
    os << "property double x\nproperty double y\nproperty double z\n";
    if (mesh.lorentzian)
        os << "property double x0\n";
    os << "element face " << mesh.faces.size() << '\n';
    os << "property list uchar int vertex_indices\nend_header\n";
    for (const auto& v : mesh.vertices) {
        os << v.x1 << ' ' << v.x2 << ' ' << v.x3;
        if (mesh.lorentzian)
            os << ' ' << v.x0;
        os << '\n';
    }
    for (const auto& f : mesh.faces)
        os << "3 " << f[0] << ' ' << f[1] << ' ' << f[2] << '\n';
}

MeshFormat mesh_format_for(const std::filesystem::path& path)
{
    std::string ext = path.extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return char(std::tolower(c)); });
    if (ext == ".obj")
        return MeshFormat::Obj;
    if (ext == ".ply")
        return MeshFormat::Ply;
    throw Error(ErrorKind::InvalidArgument, "mesh output must end in .obj or .ply: " + path.string());
}

void write_mesh(const SurfacePatch& patch, const std::filesystem::path& path)
{
    const MeshFormat fmt = mesh_format_for(path);
    std::ofstream os(path);
    if (!os)
        throw Error(ErrorKind::InvalidArgument, "cannot open " + path.string() + " for writing");
    const TriMesh m = triangulate(patch);
    if (fmt == MeshFormat::Obj)
        write_obj(m, os);
    else
        write_ply(m, os);
    if (!os)
        throw Error(ErrorKind::InvalidArgument, "write failed: " + path.string());
}

}  // namespace solsurf
