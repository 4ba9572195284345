#pragma once

#include <abstrans/abstrans.hpp>

#include <string>

namespace fixtures {

std::string path(const std::string& file);
std::string read(const std::string& file);

abstrans::Transducer transducer(const std::string& file);
abstrans::Cfa cfa(const std::string& file);
abstrans::ConcernMap concerns(const std::string& file, const abstrans::Transducer& t);

} // namespace fixtures
