package org.im4java.core;

import java.util.ArrayList;
import java.util.List;

public class GMOperation {
    private final List<String> args = new ArrayList<String>();

    public List<String> getCmdArgs() {
        return args;
    }
}
