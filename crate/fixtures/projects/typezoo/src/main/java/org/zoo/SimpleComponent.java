package org.zoo;

public class SimpleComponent extends AbstractWComponent {
    @Override
    public String name() {
        return "simple";
    }
}
