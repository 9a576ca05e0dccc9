package org.gm4java.engine.support;

import java.io.File;

public class GMOperation extends org.im4java.core.GMOperation {
    public GMOperation addImage(final File file) {
        if (file == null) {
            throw new IllegalArgumentException(
                "file must be defined");
        }
        getCmdArgs().add(file.getPath());
        return this;
    }

    public int size() {
        return getCmdArgs().size();
    }

    public String last() {
        return getCmdArgs().get(getCmdArgs().size() - 1);
    }
}
