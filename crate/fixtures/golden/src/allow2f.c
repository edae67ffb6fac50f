#include "httpd.h"

static const char *set_allow2f(cmd_parms *cmd, void *d, const char *arg)
{
    core_dir_config *conf = d;

    if (!strcasecmp(arg, "on")) {
        conf->allow_encoded_slashes = 1;
    }
    else if (!strcasecmp(arg, "off")) {
        conf->allow_encoded_slashes = 0;
    }
    else {
        return "values other than on and off are illegal here";
    }
    return NULL;
}
