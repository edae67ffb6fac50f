#include "httpd.h"

static const char *set_limit_req_fields(cmd_parms *cmd, void *dummy,
                                        const char *arg)
{
    int val = atoi(arg);

    if (val < 0) {
        return apr_pstrcat(cmd->pool, "LimitRequestFields ",
                           "must be a non-negative integer (0 = no limit)",
                           NULL);
    }
    return NULL;
}
