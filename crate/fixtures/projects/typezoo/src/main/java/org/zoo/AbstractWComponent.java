package org.zoo;

public abstract class AbstractWComponent {
    public abstract String name();
}
