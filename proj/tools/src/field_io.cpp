#include "vpp/field_io.hpp"

#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "vpp/io_error.hpp"
#include "vpp/operators.hpp"

namespace vpp {

void write_fields_vtk(const std::filesystem::path& path, const VelocityField& v, const ScalarCellField& p, int step,
                      double t) {
    const Grid& g = v.grid();
    std::FILE* f = std::fopen(path.c_str(), "w");
    if (!f) throw IoError("cannot write " + path.string());
    std::fprintf(f, "# vtk DataFile Version 3.0\n");
    std::fprintf(f, "vpp fields step=%d t=%.17g\n", step, t);
    std::fprintf(f, "ASCII\nDATASET STRUCTURED_POINTS\n");
    std::fprintf(f, "DIMENSIONS %d %d 1\n", g.nx(), g.ny());
    std::fprintf(f, "ORIGIN %.17g %.17g 0\n", 0.5 * g.hx(), 0.5 * g.hy());
    std::fprintf(f, "SPACING %.17g %.17g 1\n", g.hx(), g.hy());
    std::fprintf(f, "POINT_DATA %zu\n", g.num_cells());

    const ScalarCellField div = divergence(v);
    auto array = [&](const char* name, auto value) {
        std::fprintf(f, "SCALARS %s double 1\nLOOKUP_TABLE default\n", name);
        for (int j = 0; j < g.ny(); ++j)
            for (int i = 0; i < g.nx(); ++i) std::fprintf(f, "%.17g\n", value(i, j));
    };
    array("u", [&](int i, int j) { return cell_velocity(v, i, j).first; });
    array("v", [&](int i, int j) { return cell_velocity(v, i, j).second; });
    array("p", [&](int i, int j) { return p(i, j); });
    array("div", [&](int i, int j) { return div(i, j); });
    const bool failed = std::ferror(f) != 0;
    if (std::fclose(f) != 0 || failed) throw IoError("error while writing " + path.string());
}

CellData read_fields_vtk(const std::filesystem::path& path, const Grid& grid) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read field file " + path.string());
    const std::string where = path.string() + ": ";

    std::string line;
    auto next_line = [&](const char* what) {
        if (!std::getline(in, line)) throw std::invalid_argument(where + "unexpected end of file, expected " + what);
        if (!line.empty() && line.back() == '\r') line.pop_back();
        return line;
    };
    if (next_line("the vtk header").rfind("# vtk DataFile", 0) != 0)
        throw std::invalid_argument(where + "not a legacy vtk file");
    next_line("a title");
    if (next_line("ASCII") != "ASCII") throw std::invalid_argument(where + "only ASCII files are supported");
    if (next_line("DATASET") != "DATASET STRUCTURED_POINTS")
        throw std::invalid_argument(where + "dataset must be STRUCTURED_POINTS");

    int nx = 0, ny = 0, nz = 0;
    std::size_t count = 0;
    std::map<std::string, std::vector<double>> arrays;
    std::string token;
    while (in >> token) {
        if (token == "DIMENSIONS") {
            in >> nx >> ny >> nz;
        } else if (token == "ORIGIN" || token == "SPACING") {
            double a, b, c;
            in >> a >> b >> c;
        } else if (token == "POINT_DATA") {
            in >> count;
        } else if (token == "SCALARS") {
            std::string name, type, lookup, table;
            std::getline(in, line);
            std::istringstream header(line);
            header >> name >> type;
            in >> lookup >> table;
            if (lookup != "LOOKUP_TABLE") throw std::invalid_argument(where + "SCALARS " + name + " lacks LOOKUP_TABLE");
            std::vector<double> values(count);
            for (double& x : values)
                if (!(in >> x)) throw std::invalid_argument(where + "array " + name + " is short or malformed");
            arrays[name] = std::move(values);
        } else {
            throw std::invalid_argument(where + "unexpected token '" + token + "'");
        }
        if (!in) throw std::invalid_argument(where + "malformed " + token + " line");
    }
    if (nx != grid.nx() || ny != grid.ny() || nz != 1)
        throw std::invalid_argument(where + "lattice " + std::to_string(nx) + " x " + std::to_string(ny) +
                                    " does not match the grid");
    if (count != grid.num_cells()) throw std::invalid_argument(where + "POINT_DATA count does not match the grid");
    for (const char* name : {"u", "v"})
        if (!arrays.contains(name)) throw std::invalid_argument(where + std::string("missing array ") + name);

    const std::vector<double>& uc = arrays["u"];
    const std::vector<double>& vc = arrays["v"];
    CellData out{VelocityField(grid), std::nullopt};
    for (int j = 0; j < grid.ny(); ++j)
        for (int i = 1; i < grid.nx(); ++i)
            out.velocity.u(i, j) = 0.5 * (uc[grid.cell(i - 1, j)] + uc[grid.cell(i, j)]);
    for (int j = 1; j < grid.ny(); ++j)
        for (int i = 0; i < grid.nx(); ++i)
            out.velocity.v(i, j) = 0.5 * (vc[grid.cell(i, j - 1)] + vc[grid.cell(i, j)]);
    if (auto it = arrays.find("p"); it != arrays.end()) out.pressure = ScalarCellField(grid, it->second);
    if (!out.velocity.all_finite() || (out.pressure && !out.pressure->all_finite()))
        throw std::invalid_argument(where + "non-finite values");
    return out;
}

}  // namespace vpp
