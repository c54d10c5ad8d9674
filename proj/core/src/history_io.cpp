#include "faqem/history_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace faqem {

void save_history(const CollapseHistory& history, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    char buf[400];
    for (const CollapseRecord& r : history) {
        std::snprintf(buf, sizeof(buf),
                      "%d %d %.17g %.17g %.17g %.17g %.17g %.17g %.17g %.17g %.17g\n", r.kept,
                      r.removed, r.kept_old_position.x, r.kept_old_position.y,
                      r.kept_old_position.z, r.removed_old_position.x, r.removed_old_position.y,
                      r.removed_old_position.z, r.new_position.x, r.new_position.y,
                      r.new_position.z);
        out << buf;
    }
    out.close();
    if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

CollapseHistory load_history(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    CollapseHistory history;
    std::string line;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::istringstream iss(line);
        CollapseRecord r;
        if (!(iss >> r.kept >> r.removed >> r.kept_old_position.x >> r.kept_old_position.y >>
              r.kept_old_position.z >> r.removed_old_position.x >> r.removed_old_position.y >>
              r.removed_old_position.z >> r.new_position.x >> r.new_position.y >>
              r.new_position.z)) {
            throw std::runtime_error(path + ":" + std::to_string(lineno) +
                                     ": malformed history record");
        }
        history.push_back(std::move(r));
    }
    return history;
}

}  // namespace faqem
