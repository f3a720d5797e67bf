#ifndef TORICRAY_IO_HPP
#define TORICRAY_IO_HPP

#include <string>

#include "toricray/grid.hpp"

namespace toricray {

void ensure_dir(const std::string& dir);

// Every emitted file opens with "# config_hash=<hash>".
void write_grid_csv(const std::string& path, const GridFunction& gf,
                    const std::string& hash, const std::string& level_name);

void write_text(const std::string& path, const std::string& body);

} // namespace toricray

#endif
