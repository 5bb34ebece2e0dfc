#include "rsec/io.hpp"

#include <fstream>
#include <system_error>

#include "rsec/errors.hpp"

namespace rsec {

void write_file_atomic(const std::filesystem::path& path, const std::function<void(std::ostream&)>& fill) {
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    try {
        {
            std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
            if (!out) throw UsageError("cannot open " + tmp.string() + " for writing");
            fill(out);
            out.flush();
            if (!out) throw std::runtime_error("write to " + tmp.string() + " failed");
        }
        std::filesystem::rename(tmp, path);
    } catch (...) {
        std::error_code ignored;
        std::filesystem::remove(tmp, ignored);
        throw;
    }
}

}  // namespace rsec
