#ifndef ETAQ_ETAQ_HPP
#define ETAQ_ETAQ_HPP

#include "etaq/cusps.hpp"
#include "etaq/decompose.hpp"
#include "etaq/eta_quotient.hpp"
#include "etaq/linalg.hpp"
#include "etaq/numtheory.hpp"
#include "etaq/rational.hpp"
#include "etaq/search.hpp"
#include "etaq/series.hpp"
#include "etaq/spaces.hpp"
#include "etaq/transform.hpp"

#endif
