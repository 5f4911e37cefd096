#pragma once

#include <string>

namespace dp3::cli {

// Exit codes shared by every subcommand.
inline constexpr int exit_ok = 0;
inline constexpr int exit_config = 2;
inline constexpr int exit_numeric = 3;
inline constexpr int exit_hypothesis = 4;

int cmd_simulate(const std::string& config_path, const std::string& out_dir);
int cmd_certify(const std::string& config_path, const std::string& out_dir);
int cmd_mollify(const std::string& config_path, const std::string& out_dir);
int cmd_persist(const std::string& config_path, const std::string& out_dir);
int cmd_check_reductions(const std::string& config_path, const std::string& out_dir);

}  // namespace dp3::cli
