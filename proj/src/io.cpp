#include "edlab/io.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "edlab/errors.hpp"

namespace edlab {

namespace {

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    require(out.good(), ErrorCode::IoError, "cannot open '" + path + "' for writing");
    out << std::setprecision(17);
    return out;
}

}  // namespace

void write_density_csv(const std::string& path, const GridDensity1D& f) {
    std::ofstream out = open_out(path);
    out << "x,f\n";
    for (int i = 0; i < f.grid().n_cells(); ++i)
        out << f.grid().center(i) << "," << f.value(i) << "\n";
    require(out.good(), ErrorCode::IoError, "write failed on '" + path + "'");
}

GridDensity1D read_density_csv(const std::string& path) {
    std::ifstream in(path);
    require(in.good(), ErrorCode::IoError, "cannot open '" + path + "'");
    std::string line;
    require(static_cast<bool>(std::getline(in, line)), ErrorCode::IoError,
            "empty density file '" + path + "'");
    require(line == "x,f" || line == "x,f\r", ErrorCode::IoError,
            "density CSV must start with the 'x,f' header");
    std::vector<double> xs, fs;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream row(line);
        std::string a, b;
        require(static_cast<bool>(std::getline(row, a, ',')) &&
                    static_cast<bool>(std::getline(row, b, ',')),
                ErrorCode::IoError, "malformed density row: " + line);
        xs.push_back(std::stod(a));
        fs.push_back(std::stod(b));
    }
    require(xs.size() >= 8, ErrorCode::IoError, "density CSV needs at least 8 cells");
    const double h = xs[1] - xs[0];
    require(h > 0.0, ErrorCode::IoError, "density CSV centers must increase");
    for (std::size_t i = 1; i < xs.size(); ++i)
        require(std::abs(xs[i] - xs[i - 1] - h) < 1e-9 * h + 1e-12, ErrorCode::IoError,
                "density CSV grid is not uniform");
    Grid1D grid(xs.front() - 0.5 * h, xs.back() + 0.5 * h, static_cast<int>(xs.size()));
    for (double& v : fs) v = std::max(v, 0.0);
    return GridDensity1D(grid, std::move(fs), /*normalize=*/true);
}

void write_snapshots_csv(const std::string& path, const std::vector<Snapshot>& snaps) {
    std::ofstream out = open_out(path);
    out << "t,x,f\n";
    for (const auto& s : snaps) {
        const Grid1D& g = s.density.grid();
        for (int i = 0; i < g.n_cells(); ++i)
            out << s.time << "," << g.center(i) << "," << s.density.value(i) << "\n";
    }
    require(out.good(), ErrorCode::IoError, "write failed on '" + path + "'");
}

void write_trace_csv(const std::string& path, const DecayTrace& trace,
                     const std::string& run_id) {
    std::ofstream out = open_out(path);
    out << "run_id,t,metric,alpha,value,err\n";
    for (const auto& p : trace.points)
        out << run_id << "," << p.t << "," << trace.metric << "," << trace.alpha << ","
            << p.value << "," << p.err << "\n";
    require(out.good(), ErrorCode::IoError, "write failed on '" + path + "'");
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path);
    require(in.good(), ErrorCode::IoError, "cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out = open_out(path);
    out << content;
    require(out.good(), ErrorCode::IoError, "write failed on '" + path + "'");
}

}  // namespace edlab
