#include "httpd.h"

static const char *vhost_alias_doc;

static const command_rec vd_cmds[] = {
    AP_INIT_TAKE1("VirtualDocumentRoot", vhost_alias_set, &vhost_alias_doc,
                  RSRC_CONF,
                  "how to create the document root on the fly"),
    { NULL }
};
