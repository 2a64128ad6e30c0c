#ifndef CTXUPB_HPP
#define CTXUPB_HPP

#include "ctxupb/error.hpp"
#include "ctxupb/linalg.hpp"
#include "ctxupb/graphs.hpp"
#include "ctxupb/contextuality.hpp"
#include "ctxupb/families.hpp"
#include "ctxupb/upb.hpp"
#include "ctxupb/entanglement.hpp"
#include "ctxupb/expr.hpp"
#include "ctxupb/io.hpp"

#endif  // CTXUPB_HPP
