#ifndef HYPERMOMENT_HYPERMOMENT_HPP
#define HYPERMOMENT_HYPERMOMENT_HPP

#include "hypermoment/bellgroup.hpp"
#include "hypermoment/error.hpp"
#include "hypermoment/hypergroup.hpp"
#include "hypermoment/io.hpp"
#include "hypermoment/jet.hpp"
#include "hypermoment/measure.hpp"
#include "hypermoment/moments.hpp"
#include "hypermoment/multi_index.hpp"
#include "hypermoment/polynomial.hpp"
#include "hypermoment/recurrence.hpp"
#include "hypermoment/scalar.hpp"

#endif
