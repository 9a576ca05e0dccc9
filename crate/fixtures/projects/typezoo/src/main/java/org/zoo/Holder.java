package org.zoo;

public class Holder {
    private final AbstractWComponent first;

    public Holder(AbstractWComponent first) {
        this.first = first;
    }

    public AbstractWComponent first() {
        return first;
    }
}
