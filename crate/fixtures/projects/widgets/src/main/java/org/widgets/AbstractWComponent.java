package org.widgets;

public abstract class AbstractWComponent {
    protected String id;

    public String getId() {
        return id;
    }

    public void setId(String id) {
        this.id = id;
    }

    public abstract int weight();
}
