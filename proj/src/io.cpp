#include "toricray/io.hpp"

#include <filesystem>
#include <fstream>

#include "toricray/numerics.hpp"

namespace toricray {

void ensure_dir(const std::string& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw ConfigError("cannot create output directory " + dir);
}

void write_grid_csv(const std::string& path, const GridFunction& gf,
                    const std::string& hash, const std::string& level_name) {
    std::ofstream f(path);
    if (!f) throw ConfigError("cannot write " + path);
    f << "# config_hash=" << hash << "\n";
    f << "x,t,value,level\n";
    for (int ix = 0; ix < gf.spec.nx; ++ix)
        for (int it = 0; it < gf.spec.nt; ++it)
            f << format17(gf.spec.x(ix)) << ',' << format17(gf.spec.t(it)) << ','
              << format17(gf.at(ix, it)) << ',' << level_name << "\n";
}

void write_text(const std::string& path, const std::string& body) {
    std::ofstream f(path);
    if (!f) throw ConfigError("cannot write " + path);
    f << body;
}

} // namespace toricray
