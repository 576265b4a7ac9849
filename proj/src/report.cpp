#include "suq2/report.hpp"

#include <stdexcept>

namespace suq2 {

double VerificationReport::metric(const std::string& name) const
{
    for (const auto& m : metrics) {
        if (m.name == name) return m.value;
    }
    throw std::out_of_range("report " + suite + "/" + key.subject + " has no metric " + name);
}

} // namespace suq2
