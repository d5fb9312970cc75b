#pragma once

#include "imdd/core.hpp"

namespace imdd {

struct BaselineKind {
    enum class Tag { OOK, PAM, QPSK_SCM };

    Tag tag = Tag::OOK;
    int order = 2;  // used by PAM only; power of two, at least 2

    static BaselineKind ook() { return {Tag::OOK, 2}; }
    static BaselineKind pam(int order) { return {Tag::PAM, order}; }
    static BaselineKind qpsk_scm() { return {Tag::QPSK_SCM, 4}; }
};

/// Reference formats, all with unit minimum distance:
///   OOK       {0, 1} on [DC]
///   PAM(M)    {0, 1, ..., M-1} on [DC]
///   QPSK_SCM  (1, +-1/2, +-1/2) on [DC, COS_FULL, SIN_FULL], i.e. the
///             smallest DC bias that keeps the square inside the cone.
Constellation make_baseline(BaselineKind kind, double symbol_period = 1.0);

}  // namespace imdd
