#include "imdd/baselines.hpp"

#include <bit>

namespace imdd {

Constellation make_baseline(BaselineKind kind, double symbol_period) {
    switch (kind.tag) {
        case BaselineKind::Tag::OOK:
            return {"ook", BasisConfig::pam(symbol_period), {{0.0}, {1.0}}};
        case BaselineKind::Tag::PAM: {
            if (kind.order < 2 || !std::has_single_bit(static_cast<unsigned>(kind.order)))
                throw Error(Errc::invalid_parameter,
                            "PAM order must be a power of two >= 2, got " + std::to_string(kind.order));
            std::vector<SignalPoint> pts;
            for (int i = 0; i < kind.order; ++i) pts.push_back({static_cast<double>(i)});
            return {"pam" + std::to_string(kind.order), BasisConfig::pam(symbol_period), std::move(pts)};
        }
        case BaselineKind::Tag::QPSK_SCM:
            return {"qpsk-scm",
                    BasisConfig::raised_qam(symbol_period),
                    {{1.0, 0.5, 0.5}, {1.0, -0.5, 0.5}, {1.0, -0.5, -0.5}, {1.0, 0.5, -0.5}}};
    }
    throw Error(Errc::invalid_parameter, "unknown baseline kind");
}

}  // namespace imdd
