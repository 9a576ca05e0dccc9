package org.widgets;

public class SimpleComponent extends AbstractWComponent {
    private int weight = 1;

    public SimpleComponent() {
        this.id = "simple";
    }

    @Override
    public int weight() {
        return weight;
    }
}
