#ifndef ORDFIX_ORDFIX_HPP
#define ORDFIX_ORDFIX_HPP

// Umbrella header.

#include "ordfix/core.hpp"
#include "ordfix/order.hpp"
#include "ordfix/delta.hpp"
#include "ordfix/trace.hpp"
#include "ordfix/increasing.hpp"
#include "ordfix/setvalued.hpp"
#include "ordfix/decreasing.hpp"
#include "ordfix/integral.hpp"
#include "ordfix/io.hpp"
#include "ordfix/registry.hpp"

#endif // ORDFIX_ORDFIX_HPP
