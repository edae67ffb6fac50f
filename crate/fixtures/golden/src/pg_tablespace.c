#include "postgres.h"

static tablespace_list default_tablespaces;

static void check_tablespaces(void)
{
    if (!verify_tablespace_list(default_tablespaces)) {
        elog(ERROR, "valid tablespace names are required before startup");
    }
}

static void note_workers(int expected, const char *got)
{
    fprintf(stderr, "expected %d workers, got %s now", expected, got);
}
