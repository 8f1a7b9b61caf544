#pragma once

#include <unistd.h>

#include <atomic>
#include <filesystem>
#include <string>

namespace coss::testing {

/// Self-deleting unique directory under the system temp dir.
class TempDir {
public:
    explicit TempDir(const std::string& tag) {
        static std::atomic<unsigned> counter{0};
        const auto n = counter.fetch_add(1);
        path_ = std::filesystem::temp_directory_path() /
                ("coss-" + tag + "-" + std::to_string(::getpid()) + "-" + std::to_string(n));
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    const std::filesystem::path& path() const { return path_; }
    std::string file(const std::string& name) const { return (path_ / name).string(); }

private:
    std::filesystem::path path_;
};

}  // namespace coss::testing
