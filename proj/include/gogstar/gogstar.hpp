#ifndef GOGSTAR_GOGSTAR_HPP
#define GOGSTAR_GOGSTAR_HPP

#include "gogstar/certificate.hpp"
#include "gogstar/directions.hpp"
#include "gogstar/error.hpp"
#include "gogstar/folds.hpp"
#include "gogstar/format.hpp"
#include "gogstar/freegroup.hpp"
#include "gogstar/gog.hpp"
#include "gogstar/groups.hpp"
#include "gogstar/stargraph.hpp"

#endif
