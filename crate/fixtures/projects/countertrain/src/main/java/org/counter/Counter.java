package org.counter;

public class Counter {
    private int value;

    public void increment() {
        value = value + 1;
    }

    public void add(int delta) {
        value = value + delta;
    }

    public void reset() {
        value = 0;
    }

    public int get() {
        return value;
    }
}
