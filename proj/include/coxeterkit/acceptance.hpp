#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace coxeterkit {

struct AcceptanceRow {
    int id = 0;
    std::string title;
    bool passed = false;
    bool skipped = false;  // large-tier row in a fast run
    std::string detail;
    double seconds = 0;
};

enum class AcceptanceTier { Fast, Large };

// Directory with the bundled polyhedral graphs (COXETERKIT_DATA overrides it).
std::string data_directory();

// Rows 1..11. Large-tier pieces run only with AcceptanceTier::Large.
std::vector<AcceptanceRow> run_acceptance(AcceptanceTier tier, const std::vector<int>& only = {});

// "PASS  3  Dihedral angles (...)" style line.
std::string format_row(const AcceptanceRow& row);

} // namespace coxeterkit
