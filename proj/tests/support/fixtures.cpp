#include "fixtures.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace fixtures {

std::string path(const std::string& file) { return std::string(ABSTRANS_FIXTURE_DIR) + "/" + file; }

std::string read(const std::string& file) {
    std::ifstream in(path(file));
    if (!in) throw std::runtime_error("missing fixture " + file);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

abstrans::Transducer transducer(const std::string& file) { return abstrans::parse_transducer(read(file)); }
abstrans::Cfa cfa(const std::string& file) { return abstrans::parse_cfa(read(file)); }
abstrans::ConcernMap concerns(const std::string& file, const abstrans::Transducer& t) {
    return abstrans::parse_concerns(read(file), t);
}

} // namespace fixtures
